"""
Constant-curvature space forms in a single conformal chart.

The chart is g_ij(x) = lambda(x)^2 delta_ij with
lambda(x) = 1 / (1 + c|x|^2 / 4). It covers all of R^n when c >= 0 and the
ball |x|^2 < -4/c when c < 0.
"""

import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..core.errors import DomainError, InvalidParameterError
from ..core.jets import ArrayLike, contract
from ..core.oracle import MetricField
from .so_algebra import SkewEndomorphism, wedge

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpaceForm:
    """Dimension n >= 2 and constant sectional curvature c."""

    n: int
    c: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise InvalidParameterError(f"space form dimension must be an integer >= 2, got {self.n}")
        if not np.isfinite(self.c):
            raise InvalidParameterError(f"curvature must be finite, got {self.c}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "c", float(self.c))

    @property
    def name(self) -> str:
        return f"M{self.n}({self.c:g})"

    @property
    def scalar_curvature(self) -> float:
        return self.n * (self.n - 1) * self.c

    @property
    def chart_radius(self) -> float:
        """Radius of the chart domain; inf when c >= 0."""
        if self.c >= 0:
            return np.inf
        return float(np.sqrt(-4.0 / self.c))

    def check_domain(self, x) -> None:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,):
            raise InvalidParameterError(f"{self.name}: expected {self.n} coordinates, got shape {x.shape}")
        if not np.all(np.isfinite(x)):
            raise DomainError(f"{self.name}: non-finite coordinates {x}")
        if self.c < 0 and float(x @ x) >= -4.0 / self.c:
            raise DomainError(
                f"{self.name}: point {x} outside the chart ball |x|^2 < {-4.0 / self.c:.6g}"
            )

    @cached_property
    def metric_field(self) -> MetricField:
        return MetricField(
            dim=self.n,
            components=lambda x: conformal_metric_components(self, x),
            domain=self.check_domain,
            name=self.name,
        )


def conformal_factor(sf: SpaceForm, x: ArrayLike) -> ArrayLike:
    """lambda(x) = 1 / (1 + c|x|^2/4); accepts arrays and jets."""
    sq = contract("i,i->", x, x)
    return 1.0 / (1.0 + 0.25 * sf.c * sq)


def log_gradient(sf: SpaceForm, x: ArrayLike) -> ArrayLike:
    """phi_j = d_j log lambda = -(c/2) lambda x_j."""
    return (-0.5 * sf.c) * conformal_factor(sf, x) * x


def conformal_metric_components(sf: SpaceForm, x: ArrayLike) -> ArrayLike:
    lam = conformal_factor(sf, x)
    return lam * lam * np.eye(sf.n)


def conformal_metric(sf: SpaceForm, x) -> np.ndarray:
    """
    Metric components lambda(x)^2 I at x.

    Raises:
        DomainError: if c < 0 and x lies outside the chart ball
    """
    sf.check_domain(x)
    return np.asarray(conformal_metric_components(sf, np.asarray(x, dtype=float)))


def orthonormal_frame(sf: SpaceForm, x) -> np.ndarray:
    """Rows are e_i = lambda(x)^{-1} d_{x_i} in chart coordinates."""
    sf.check_domain(x)
    lam = float(conformal_factor(sf, np.asarray(x, dtype=float)))
    return np.eye(sf.n) / lam


def frame_to_chart(sf: SpaceForm, x, w) -> np.ndarray:
    """Chart components of the vector with orthonormal-frame components w."""
    sf.check_domain(x)
    lam = float(conformal_factor(sf, np.asarray(x, dtype=float)))
    return np.asarray(w, dtype=float) / lam


def chart_to_frame(sf: SpaceForm, x, u) -> np.ndarray:
    sf.check_domain(x)
    lam = float(conformal_factor(sf, np.asarray(x, dtype=float)))
    return lam * np.asarray(u, dtype=float)


def levi_civita_frame_coefficients(sf: SpaceForm, x: ArrayLike) -> ArrayLike:
    """
    Levi-Civita connection in the orthonormal frame.

    Returns gamma[i, j, l] with nabla_{d_i} e_j = sum_l gamma[i, j, l] e_l,
    gamma[i, j, l] = phi_j delta_il - delta_ij phi_l. Skew in (j, l).
    """
    phi = log_gradient(sf, x)
    eye = np.eye(sf.n)
    return contract("j,il->ijl", phi, eye) - contract("l,ij->ijl", phi, eye)


def curvature_endomorphism(sf: SpaceForm, u, v) -> SkewEndomorphism:
    """
    R^M(u, v) for frame-expressed u, v in the convention
    R(X,Y) = nabla_[X,Y] - [nabla_X, nabla_Y]; on a space form this is -c u ^ v.
    """
    return wedge(u, v) * (-sf.c)


def sample_radius(sf: SpaceForm) -> float:
    # |x| <= 1 is admissible for c >= -3
    if sf.c >= -3.0:
        return 1.0
    return 0.5 * sf.chart_radius


def random_points(sf: SpaceForm, count: int, seed: int = 0) -> np.ndarray:
    """
    Points drawn uniformly from the ball |x| <= sample_radius(sf).

    Returns:
        array of shape (count, n)
    """
    rng = np.random.default_rng(seed)
    directions = rng.standard_normal((count, sf.n))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    radii = sample_radius(sf) * rng.random(count) ** (1.0 / sf.n)
    points = directions * radii[:, None]
    logger.debug("%s: drew %d sample points (seed %d)", sf.name, count, seed)
    return points
