"""
Coordinate curvature engine.

Given any metric field in local coordinates, computes Christoffel symbols,
the Riemann and Ricci tensors and the scalar curvature from the exact second
jet of the metric components. Nothing here knows about bundles or closed
forms; it is the independent reference the rest of the library is checked
against.

Index layout:
    SecondJet.dg[i, j, k]          = d_k g_ij
    SecondJet.d2g[i, j, k, l]      = d_k d_l g_ij
    christoffel[k, i, j]           = Gamma^k_ij
    CurvatureReport.riemann[l, k, i, j] = (R(d_i, d_j) d_k)^l
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Optional

import numpy as np

from .errors import DegenerateMetricError, DegeneratePlaneError, InvalidParameterError, MetricFieldError
from .jets import Jet

logger = logging.getLogger(__name__)

CONDITION_LIMIT = 1e12
SYMMETRY_TOLERANCE = 1e-12


class Convention(str, Enum):
    """Sign convention of the Riemann tensor.

    TEXTBOOK: R(X,Y) = nabla_X nabla_Y - nabla_Y nabla_X - nabla_[X,Y]
    NEGATED:  R(X,Y) = nabla_[X,Y] - (nabla_X nabla_Y - nabla_Y nabla_X)
    """

    TEXTBOOK = "textbook"
    NEGATED = "negated"

    @classmethod
    def _missing_(cls, value):
        if isinstance(value, str) and value.lower() == "paper":
            return cls.NEGATED
        return None


@dataclass(frozen=True)
class MetricField:
    """
    A Riemannian metric in one chart.

    `components` maps a coordinate vector to the symmetric dim x dim matrix of
    metric components. It must be written with the operators of core.jets so
    that it accepts both numpy vectors and Jets.
    """

    dim: int
    components: Callable[[Any], Any]
    domain: Optional[Callable[[np.ndarray], None]] = None  # raises DomainError
    name: str = "metric"

    def check_point(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise InvalidParameterError(f"{self.name}: expected {self.dim} coordinates, got shape {x.shape}")
        if self.domain is not None:
            self.domain(x)
        return x

    def evaluate(self, x) -> np.ndarray:
        x = self.check_point(x)
        return np.asarray(self.components(x), dtype=float)


@dataclass(frozen=True, eq=False)
class SecondJet:
    """Value, gradient and Hessian of every metric component at one point."""

    g: np.ndarray
    dg: np.ndarray
    d2g: np.ndarray

    @property
    def dim(self) -> int:
        return self.g.shape[0]


@dataclass(frozen=True, eq=False)
class CurvatureReport:
    christoffel: np.ndarray
    riemann: np.ndarray
    ricci: np.ndarray
    scalar: float
    convention: Convention
    metric: np.ndarray

    @property
    def dim(self) -> int:
        return self.metric.shape[0]

    def lowered_riemann(self) -> np.ndarray:
        """R_{lkij} = g_{lm} R^m_{kij}."""
        return np.einsum("lm,mkij->lkij", self.metric, self.riemann)

    def apply(self, u, v, w) -> np.ndarray:
        """Components of R(u, v) w in this report's convention."""
        return np.einsum("lkij,k,i,j->l", self.riemann, w, u, v)


def second_jet(field: MetricField, x) -> SecondJet:
    """
    Exact value, gradient and Hessian of the metric components at x.

    Args:
        field: metric field
        x: coordinate vector inside the chart domain

    Returns:
        SecondJet

    Raises:
        DomainError: if x is outside the chart
        MetricFieldError: if the components are not symmetric
        DegenerateMetricError: if the metric is not positive definite
    """
    x = field.check_point(x)
    g = field.components(Jet.variables(x))
    if not isinstance(g, Jet):
        g = Jet.constant(g, field.dim)
    if g.shape != (field.dim, field.dim):
        raise MetricFieldError(f"{field.name}: components have shape {g.shape}, expected {(field.dim, field.dim)}")

    scale = 1.0 + np.max(np.abs(g.val))
    asymmetry = np.max(np.abs(g.val - g.val.T))
    if asymmetry > SYMMETRY_TOLERANCE * scale:
        raise MetricFieldError(f"{field.name}: metric not symmetric at {x} (asymmetry {asymmetry:.3e})")
    if np.min(np.linalg.eigvalsh(g.val)) <= 0.0:
        raise DegenerateMetricError(f"{field.name}: metric not positive definite at {x}")

    return SecondJet(g=g.val, dg=g.d1, d2g=g.d2)


def inverse_metric(g: np.ndarray) -> np.ndarray:
    """Inverse by LU solve; rejects ill-conditioned matrices."""
    cond = np.linalg.cond(g)
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise DegenerateMetricError(f"metric is numerically singular (condition estimate {cond:.3e})")
    return np.linalg.solve(g, np.eye(g.shape[0]))


def _lowered_christoffel(dg: np.ndarray) -> np.ndarray:
    # L[i, j, l] = 1/2 (d_i g_jl + d_j g_il - d_l g_ij)
    return 0.5 * (np.einsum("jli->ijl", dg) + np.einsum("ilj->ijl", dg) - dg)


def christoffel(jet: SecondJet) -> np.ndarray:
    """
    Christoffel symbols of the second kind, gamma[k, i, j] = Gamma^k_ij.

    Raises:
        DegenerateMetricError: if the metric cannot be inverted reliably
    """
    ginv = inverse_metric(jet.g)
    return np.einsum("kl,ijl->kij", ginv, _lowered_christoffel(jet.dg))


def _christoffel_derivative(jet: SecondJet, ginv: np.ndarray) -> np.ndarray:
    """dgamma[k, i, j, m] = d_m Gamma^k_ij."""
    d2g = jet.d2g
    lowered = _lowered_christoffel(jet.dg)
    dlowered = 0.5 * (
        np.einsum("jlim->ijlm", d2g) + np.einsum("iljm->ijlm", d2g) - d2g
    )
    dginv = -np.einsum("ka,abm,bl->klm", ginv, jet.dg, ginv)
    return np.einsum("klm,ijl->kijm", dginv, lowered) + np.einsum("kl,ijlm->kijm", ginv, dlowered)


def curvature_from_jet(jet: SecondJet, convention: Convention = Convention.TEXTBOOK) -> CurvatureReport:
    ginv = inverse_metric(jet.g)
    gamma = np.einsum("kl,ijl->kij", ginv, _lowered_christoffel(jet.dg))
    dgamma = _christoffel_derivative(jet, ginv)

    # R^r_{smn} = d_m G^r_{ns} - d_n G^r_{ms} + G^r_{ml} G^l_{ns} - G^r_{nl} G^l_{ms}
    riemann = (
        np.einsum("rnsm->rsmn", dgamma)
        - np.einsum("rmsn->rsmn", dgamma)
        + np.einsum("rml,lns->rsmn", gamma, gamma)
        - np.einsum("rnl,lms->rsmn", gamma, gamma)
    )
    ricci = np.einsum("rsrn->sn", riemann)
    ricci = 0.5 * (ricci + ricci.T)
    scalar = float(np.einsum("ij,ij->", ginv, ricci))

    convention = Convention(convention)
    if convention is Convention.NEGATED:
        riemann = -riemann
    return CurvatureReport(
        christoffel=gamma,
        riemann=riemann,
        ricci=ricci,
        scalar=scalar,
        convention=convention,
        metric=jet.g,
    )


def curvature_report(field: MetricField, x, convention: Convention = Convention.TEXTBOOK) -> CurvatureReport:
    """
    Christoffel symbols, Riemann and Ricci tensors and scalar curvature at x.

    The Riemann tensor is returned in the requested convention; the Ricci
    tensor and the scalar curvature do not depend on it.
    """
    report = curvature_from_jet(second_jet(field, x), convention)
    logger.debug("%s: scalar curvature %.12g at %s", field.name, report.scalar, np.asarray(x))
    return report


def sectional_curvature(report: CurvatureReport, g: np.ndarray, u, v) -> float:
    """
    Sectional curvature of the plane spanned by u and v.

    In the negated convention this is <R(u,v)u, v> / (|u|^2 |v|^2 - <u,v>^2);
    in the textbook convention <R(u,v)v, u> / (...). Both give the same number.

    Raises:
        DegeneratePlaneError: if u and v are linearly dependent
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    uu = u @ g @ u
    vv = v @ g @ v
    uv = u @ g @ v
    area = uu * vv - uv * uv
    if not area > 1e-14 * max(uu * vv, np.finfo(float).tiny):
        raise DegeneratePlaneError("vectors do not span a plane")
    if report.convention is Convention.NEGATED:
        numerator = report.apply(u, v, u) @ g @ v
    else:
        numerator = report.apply(u, v, v) @ g @ u
    return float(numerator / area)


def metric_compatibility_residual(jet: SecondJet, gamma: np.ndarray) -> float:
    """
    max |d_k g_ij - Gamma^m_ki g_mj - Gamma^m_kj g_im|, relative to the
    largest derivative component.
    """
    predicted = np.einsum("mki,mj->ijk", gamma, jet.g) + np.einsum("mkj,im->ijk", gamma, jet.g)
    scale = max(1.0, float(np.max(np.abs(jet.dg))))
    return float(np.max(np.abs(jet.dg - predicted)) / scale)


def bianchi_residual(report: CurvatureReport) -> float:
    """Cyclic sum of R^l_{kij} over (k, i, j), relative to the largest component."""
    r = report.riemann
    cyclic = r + np.einsum("lijk->lkij", r) + np.einsum("ljki->lkij", r)
    scale = max(1.0, float(np.max(np.abs(r))))
    return float(np.max(np.abs(cyclic)) / scale)


def frame_components(report: CurvatureReport, frame: np.ndarray) -> np.ndarray:
    """
    Riemann tensor expressed in a frame.

    Args:
        report: curvature report
        frame: matrix whose rows are the frame vectors in chart coordinates

    Returns:
        array R[a, b] of matrices such that R[a, b] @ w are the frame
        components of R(e_a, e_b) applied to the frame vector with
        components w.
    """
    basis = np.asarray(frame, dtype=float).T  # columns are the frame vectors
    coords = np.einsum("lkij,ia,jb->ablk", report.riemann, basis, basis)
    inverse = np.linalg.solve(basis, np.eye(basis.shape[0]))
    return np.einsum("pl,ablk,kq->abpq", inverse, coords, basis)
