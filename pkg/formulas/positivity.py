"""
Positivity region of the scalar curvature of h_{1,1} on AO(M, k) over a
space form of dimension n and curvature c.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..core.errors import InvalidParameterError
from .closed_forms import varpi

TWO_DIM_THRESHOLD = 2.0 * (1.0 - np.sqrt(2.0))


@dataclass(frozen=True)
class PositivityConstants:
    """
    a = n(n-1), b = (r-1)(r-2), d = 4(n-2) and the curvature threshold below
    which no k gives positive scalar curvature. For n = 2 the threshold is
    2(1 - sqrt 2); otherwise C_n = 2(a - sqrt(a^2 + bd)) / d.
    """

    n: int
    r: int
    a: int
    b: int
    d: int
    threshold: float

    @property
    def C(self) -> float:
        return self.threshold

    def K(self, c: float) -> Optional[float]:
        """Largest admissible k at curvature c; None when c == 0 or c <= threshold."""
        c = float(c)
        if c == 0.0 or not c > self.threshold:
            return None
        if self.n == 2:
            return 2.0 * (c + 2.0 * np.sqrt(1.0 + c)) / c**2
        d = self.d
        return 2.0 * (c * d + 2.0 * np.sqrt(d) * np.sqrt(self.b + self.a * c)) / (d * c**2)


def positivity_constants(n: int) -> PositivityConstants:
    if int(n) != n or n < 2:
        raise InvalidParameterError(f"n must be an integer >= 2, got {n}")
    n = int(n)
    r = n * (n + 1) // 2
    a = n * (n - 1)
    b = (r - 1) * (r - 2)
    d = 4 * (n - 2)
    if n == 2:
        threshold = TWO_DIM_THRESHOLD
    else:
        threshold = 2.0 * (a - np.sqrt(a * a + b * d)) / d
    return PositivityConstants(n=n, r=r, a=a, b=b, d=d, threshold=float(threshold))


def positivity_predicate(n: int, c: float, k: float) -> bool:
    """
    True iff h_{1,1} on AO(M, k) has positive scalar curvature everywhere:
    c == 0, or c above the threshold and 0 < k <= K(n, c). No tolerance is
    applied.
    """
    if not (np.isfinite(k) and k > 0):
        raise InvalidParameterError(f"k must be > 0, got {k}")
    constants = positivity_constants(n)
    if c == 0:
        return True
    K = constants.K(c)
    if K is None:
        return False
    return bool(k <= K)


@dataclass(frozen=True)
class AlphaPolynomial:
    """
    alpha^2 s^A = quadratic alpha^2 + linear alpha + constant
                  + residual * alpha * |residual_part|^2

    residual_part is "F" for n = 2 (|Z|^2 eliminated) and "Z" for n >= 3
    (|F|^2 eliminated). The residual coefficient is never negative.
    """

    quadratic: float
    linear: float
    constant: float
    residual: float
    residual_part: str

    def evaluate(self, alpha: float, residual_norm2: float) -> float:
        return (
            self.quadratic * alpha**2
            + self.linear * alpha
            + self.constant
            + self.residual * alpha * residual_norm2
        )


def atiyah_alpha_polynomial(n: int, c: float, k: float) -> AlphaPolynomial:
    constants = positivity_constants(n)
    if not k > 0:
        raise InvalidParameterError(f"k must be > 0, got {k}")
    w2 = varpi(c, k) ** 2
    r = constants.r
    if n == 2:
        return AlphaPolynomial(
            quadratic=2.0 * (c + 1.0 - w2),
            linear=2.0 * (1.0 + w2),
            constant=14.0,
            residual=2.0 * w2,
            residual_part="F",
        )
    b = constants.b
    return AlphaPolynomial(
        quadratic=n * (n - 1) * c + b - 4.0 * w2 * (n - 2),
        linear=b + 4.0 * w2 * (n - 2),
        constant=float((r - 1) * (r + 4)),
        residual=2.0 * (n - 3) * w2,
        residual_part="Z",
    )
