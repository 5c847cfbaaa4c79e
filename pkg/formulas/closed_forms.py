"""
Closed-form curvature formulas for generalized Cheeger-Gromoll metrics.

Fiber quantities depend only on (p, q), the rank r and t = |a|^2:
    omega   = 1 / (1 + t)
    omega_q = 1 / (1 + q t)
Fiber vectors are given by their components in an orthonormal frame of E.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..core.errors import InvalidParameterError
from ..core.oracle import curvature_report
from ..geometry.bundles import (
    CGParams,
    EuclideanBundle,
    TotalSpacePoint,
    xi_form,
)
from ..geometry.so_algebra import SkewEndomorphism
from ..geometry.space_forms import SpaceForm

logger = logging.getLogger(__name__)

ORTHONORMAL_TOLERANCE = 1e-9


@dataclass(frozen=True)
class FiberWeights:
    omega: float
    omega_q: float
    F: float
    G: float


def _check_t(t: float) -> float:
    t = float(t)
    if not (np.isfinite(t) and t >= 0):
        raise InvalidParameterError(f"t = |a|^2 must be finite and >= 0, got {t}")
    return t


def _check_rank(r: int) -> int:
    if int(r) != r or r < 1:
        raise InvalidParameterError(f"rank must be a positive integer, got {r}")
    return int(r)


def fiber_weights(params: CGParams, t: float) -> FiberWeights:
    """
    F = p omega omega_q ((p + 2q - 2) omega - q)
    G = (p^2 omega^2 - p (p - 2) omega + q) omega_q
    """
    t = _check_t(t)
    p, q = params.p, params.q
    omega = 1.0 / (1.0 + t)
    omega_q = 1.0 / (1.0 + q * t)
    F = p * omega * omega_q * ((p + 2 * q - 2) * omega - q)
    G = (p * p * omega * omega - p * (p - 2) * omega + q) * omega_q
    return FiberWeights(omega=omega, omega_q=omega_q, F=F, G=G)


def fiber_sectional(params: CGParams, a, alpha, beta) -> float:
    """
    Sectional curvature of the fiber metric on the plane spanned by the
    vertical lifts of an orthonormal pair (alpha, beta), at the point a.

    Raises:
        InvalidParameterError: if (alpha, beta) is not orthonormal
    """
    a, alpha, beta = (np.asarray(v, dtype=float) for v in (a, alpha, beta))
    gram = np.array([[alpha @ alpha, alpha @ beta], [beta @ alpha, beta @ beta]])
    if np.max(np.abs(gram - np.eye(2))) > ORTHONORMAL_TOLERANCE:
        raise InvalidParameterError("fiber_sectional needs an orthonormal pair")
    w = fiber_weights(params, a @ a)
    s = (alpha @ a) ** 2 + (beta @ a) ** 2
    return w.omega ** (-params.p) * (w.F * s + w.G) / (1.0 + params.q * s)


def fiber_ricci(params: CGParams, a, alpha, beta) -> float:
    """ric^v(alpha^v, beta^v) at a; the rank is len(a)."""
    a, alpha, beta = (np.asarray(v, dtype=float) for v in (a, alpha, beta))
    r = len(a)
    t = float(a @ a)
    w = fiber_weights(params, t)
    isotropic = t * w.omega_q * w.F + (r - 2 + w.omega_q) * w.G
    radial = (r - 1 - w.omega_q) * w.F + params.q * w.omega_q * w.G
    return isotropic * float(alpha @ beta) + radial * float(alpha @ a) * float(beta @ a)


@dataclass(frozen=True)
class ScalarPolynomialCoeffs:
    """
    Numerators of the fiber scalar curvature f (cubic e, b, c, d) and of its
    derivative f' (quartic a1..e1).
    """

    e: float
    b: float
    c: float
    d: float
    a1: float
    b1: float
    c1: float
    d1: float
    e1: float


def scalar_polynomial_coeffs(params: CGParams, r: int) -> ScalarPolynomialCoeffs:
    r = _check_rank(r)
    p, q = params.p, params.q
    e = q**2 * (r - 2)
    b = q * ((2 - r) * p**2 + 2 * (r - 3) * p + 2 * (r - 2) * q + r)
    c = (2 - r) * p**2 + 2 * (r - 1) * p * q + (r - 2) * q**2 + 2 * (r - 2) * p + 2 * r * q
    d = r * (2 * p + q)

    a1 = (r - 2) * (p - 1) * q**3
    b1 = -(
        r * p**3 - 4 * r * p**2 - 2 * p**3 - 2 * r * p * q + 2 * r * p + 10 * p**2
        + 3 * r * q + 4 * p * q + r - 10 * p - 6 * q + 2
    ) * q**2
    c1 = (
        -2 * r * p**3 * q + 2 * r * p**2 * q**2 + r * p * q**3 + 7 * r * p**2 * q
        + 4 * p**3 * q - 2 * r * p * q**2 - 2 * p**2 * q**2 - 3 * r * q**3
        - 2 * p * q**3 - 5 * r * p * q - 16 * p**2 * q - 3 * r * q**2
        + 2 * p * q**2 + 6 * q**3 + 12 * p * q - 6 * q**2
    )
    d1 = (
        -r * p**3 + 3 * r * p**2 * q - r * q**3 + 3 * r * p**2 + 2 * p**3
        - 6 * r * p * q - 3 * r * q**2 + 2 * q**3 - 2 * r * p - 6 * p**2
        - 6 * p * q - 6 * q**2 + 4 * p
    )
    e1 = (p**2 - p * q - q**2 - 2 * p) * (r + 2)
    return ScalarPolynomialCoeffs(e=e, b=b, c=c, d=d, a1=a1, b1=b1, c1=c1, d1=d1, e1=e1)


def fiber_scalar(params: CGParams, r: int, t: float) -> float:
    """f(t) = (r-1)(1+t)^p / ((1+qt)^2 (1+t)^2) (e t^3 + b t^2 + c t + d)."""
    return fiber_scalar_continued(params, _check_rank(r), _check_t(t))


def fiber_scalar_continued(params: CGParams, r: int, t: float) -> float:
    """
    f without the t >= 0 guard; defined for t > -1 / max(1, q). Difference
    stencils centred at t = 0 evaluate it at small negative t.
    """
    k = scalar_polynomial_coeffs(params, r)
    cubic = ((k.e * t + k.b) * t + k.c) * t + k.d
    return (r - 1) * (1.0 + t) ** params.p / ((1.0 + params.q * t) ** 2 * (1.0 + t) ** 2) * cubic


def fiber_scalar_derivative(params: CGParams, r: int, t: float) -> float:
    """f'(t) = (r-1)(1+t)^p / ((1+qt)^3 (1+t)^3) (a1 t^4 + b1 t^3 + c1 t^2 + d1 t + e1)."""
    r = _check_rank(r)
    t = _check_t(t)
    k = scalar_polynomial_coeffs(params, r)
    quartic = (((k.a1 * t + k.b1) * t + k.c1) * t + k.d1) * t + k.e1
    return (r - 1) * (1.0 + t) ** params.p / ((1.0 + params.q * t) ** 3 * (1.0 + t) ** 3) * quartic


def base_scalar(bundle: EuclideanBundle, x) -> float:
    if isinstance(bundle.base, SpaceForm):
        bundle.base.check_domain(x)
        return bundle.base.scalar_curvature
    return curvature_report(bundle.base_field, x).scalar


def total_scalar_E(params: CGParams, bundle: EuclideanBundle, pt: TotalSpacePoint) -> float:
    """s^E(x, a) = s^M(x) + f(|a|^2) - xi(a, a) / (4 (1 + |a|^2)^p)."""
    s_base = base_scalar(bundle, pt.x)
    s_fiber = fiber_scalar(params, bundle.rank, pt.t)
    xi = xi_form(bundle, pt.x, pt.mu, pt.mu)
    value = s_base + s_fiber - xi / (4.0 * pt.alpha**params.p)
    logger.debug(
        "%s: s^M=%.12g f=%.12g xi=%.12g -> %.12g", bundle.name, s_base, s_fiber, xi, value
    )
    return value


def varpi(c: float, k: float) -> float:
    """c (2 - c k) / 4; zero exactly when k = 2/c."""
    return 0.25 * c * (2.0 - c * k)


def b_norm_squared(n: int, c: float, k: float, p: float, Z, F: SkewEndomorphism) -> float:
    """|B|^2 = 2 varpi^2 omega^p ((n-1)|Z|^2 + 2(n-2)|F|^2) on AO(M, k) over a space form."""
    Z = np.asarray(Z, dtype=float)
    z2 = float(Z @ Z)
    f2 = F.norm_squared(k)
    omega = 1.0 / (1.0 + z2 + f2)
    return 2.0 * varpi(c, k) ** 2 * omega**p * ((n - 1) * z2 + 2 * (n - 2) * f2)


def _atiyah_norms(n: int, pt: TotalSpacePoint):
    z2 = float(pt.mu[:n] @ pt.mu[:n])
    f2 = float(pt.mu[n:] @ pt.mu[n:])
    return z2, f2


def atiyah_scalar_from_norms(n: int, c: float, k: float, z2: float, f2: float) -> float:
    """Scalar curvature of h_{1,1} on AO(M, k) as a function of |Z|^2 and |F|^2."""
    if not k > 0:
        raise InvalidParameterError(f"k must be > 0, got {k}")
    r = n * (n + 1) // 2
    alpha = 1.0 + z2 + f2
    fiber = (r - 1) / alpha**2 * (6.0 + (r - 2) * (alpha**2 + alpha + 1.0))
    oneill = 2.0 * varpi(c, k) ** 2 / alpha * ((n - 1) * z2 + 2 * (n - 2) * f2)
    return n * (n - 1) * c + fiber - oneill


def atiyah_scalar(n: int, c: float, k: float, pt: TotalSpacePoint) -> float:
    """
    s^A = n(n-1)c + (r-1)/alpha^2 (6 + (r-2)(alpha^2 + alpha + 1))
          - 2 varpi^2 / alpha ((n-1)|Z|^2 + 2(n-2)|F|^2),  alpha = 1 + |Z|^2 + |F|^2.

    pt carries Atiyah fiber coordinates (Z in the orthonormal frame, then the
    so(TM) coordinates).

    Raises:
        InvalidParameterError: if k <= 0
    """
    z2, f2 = _atiyah_norms(n, pt)
    return atiyah_scalar_from_norms(n, c, k, z2, f2)


def atiyah_scalar_general(params: CGParams, n: int, c: float, k: float, pt: TotalSpacePoint) -> float:
    """s^A = n(n-1)c + f(t) - |B|^2 for any (p, q)."""
    if not k > 0:
        raise InvalidParameterError(f"k must be > 0, got {k}")
    z2, f2 = _atiyah_norms(n, pt)
    r = n * (n + 1) // 2
    t = z2 + f2
    oneill = 2.0 * varpi(c, k) ** 2 * (1.0 + t) ** (-params.p) * ((n - 1) * z2 + 2 * (n - 2) * f2)
    return n * (n - 1) * c + fiber_scalar(params, r, t) - oneill


def predicted_constant_scalar(sf: SpaceForm, params: CGParams, r: int) -> Optional[float]:
    """Constant total scalar curvature for the rigid pairs over a flat connection, else None."""
    if (params.p, params.q) == (0.0, 0.0):
        return sf.scalar_curvature
    if (params.p, params.q) == (2.0, 0.0):
        return sf.scalar_curvature + 4 * r * (r - 1)
    return None
