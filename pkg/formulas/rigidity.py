"""
Rigidity classifications for h_{p,q} and their numerical counterparts on
the constructed bundles.

The predicate forms take the hypotheses (flat connection, constant base
scalar curvature, base geometry) as declared flags and are exact. The
numerical forms sample the oracle on concrete bundles.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from ..core.errors import DegeneratePlaneError, InvalidParameterError
from ..core.oracle import Convention, curvature_report, sectional_curvature
from ..geometry.bundles import (
    AtiyahParams,
    CGParams,
    EuclideanBundle,
    atiyah_h_tensor,
    build_atiyah_bundle,
    cg_metric_field,
    frame_connection_curvature,
    random_total_points,
)
from ..geometry.space_forms import SpaceForm, orthonormal_frame, random_points
from .closed_forms import fiber_scalar, predicted_constant_scalar

logger = logging.getLogger(__name__)

WITNESS_GRID = (0.0, 1.0, 0.5, 2.0, 4.0, 10.0)
WITNESS_SEPARATION = 1e-9
WITNESS_MAX_T = 1e12


class FiberCase(str, Enum):
    SASAKI_FLAT_PAIR = "sasaki_flat_pair"
    STEREOGRAPHIC_PAIR = "stereographic_pair"
    NONCONSTANT = "nonconstant"


@dataclass(frozen=True)
class RigidityVerdict:
    case: FiberCase
    fiber_scalar_value: Optional[float] = None
    scalar_offset: Optional[float] = None
    witness: Optional[Tuple[float, float, float, float]] = None  # (t1, t2, f(t1), f(t2))

    @property
    def constant_fiber_scalar(self) -> bool:
        return self.case is not FiberCase.NONCONSTANT


def _is_pair(params: CGParams, p: float, q: float) -> bool:
    return params.p == p and params.q == q


def classify_fiber_constancy(params: CGParams, r: int) -> RigidityVerdict:
    """
    The fiber scalar curvature is constant only for (0, 0) (value 0) and
    (2, 0) (value 4r(r-1)); otherwise a witness pair with f(t1) != f(t2) is
    attached. The search doubles t past the fixed grid; parameters so close to
    a rigid pair that no separation shows up before WITNESS_MAX_T get no
    witness.
    """
    if int(r) != r or r < 2:
        raise InvalidParameterError(f"rank must be an integer >= 2, got {r}")
    r = int(r)
    if _is_pair(params, 0.0, 0.0):
        return RigidityVerdict(FiberCase.SASAKI_FLAT_PAIR, fiber_scalar_value=0.0, scalar_offset=0.0)
    if _is_pair(params, 2.0, 0.0):
        value = float(4 * r * (r - 1))
        return RigidityVerdict(FiberCase.STEREOGRAPHIC_PAIR, fiber_scalar_value=value, scalar_offset=value)

    t1 = WITNESS_GRID[0]
    f1 = fiber_scalar(params, r, t1)
    for t2 in _witness_candidates():
        f2 = fiber_scalar(params, r, t2)
        if abs(f2 - f1) > WITNESS_SEPARATION:
            return RigidityVerdict(FiberCase.NONCONSTANT, witness=(t1, t2, f1, f2))
    logger.debug("%s, r=%d: no witness separated by %g up to t=%g", params.label, r, WITNESS_SEPARATION, WITNESS_MAX_T)
    return RigidityVerdict(FiberCase.NONCONSTANT)


def _witness_candidates():
    yield from WITNESS_GRID[1:]
    t = 2.0 * WITNESS_GRID[-1]
    while t <= WITNESS_MAX_T:
        yield t
        t *= 2.0


@dataclass(frozen=True)
class ScalarRigidity:
    constant: bool
    offset: Optional[float]
    verdict: RigidityVerdict


def scalar_rigidity(
    params: CGParams, r: int, flat_connection: bool, constant_base_scalar: bool
) -> ScalarRigidity:
    """
    s^E is constant iff the connection is flat, s^M is constant and (p, q) is
    (0, 0) or (2, 0); then s^E = s^M + offset with offset 0 or 4r(r-1).
    """
    verdict = classify_fiber_constancy(params, r)
    constant = bool(flat_connection and constant_base_scalar and verdict.constant_fiber_scalar)
    return ScalarRigidity(
        constant=constant,
        offset=verdict.scalar_offset if constant else None,
        verdict=verdict,
    )


class BaseProperty(str, Enum):
    NONE = "none"
    LOCALLY_SYMMETRIC = "locally_symmetric"
    EINSTEIN = "einstein"
    RICCI_FLAT = "ricci_flat"
    FLAT = "flat"


@dataclass(frozen=True)
class SpecialStructures:
    einstein: bool
    einstein_constant: Optional[float]
    locally_symmetric: bool
    constant_sectional: bool
    flat: bool


def classify_special_structures(
    params: CGParams,
    r: int,
    flat_connection: bool,
    base_property: BaseProperty,
    base_einstein_constant: Optional[float] = None,
) -> SpecialStructures:
    """
    Einstein, locally symmetric and constant-curvature verdicts for (E, h_{p,q}).

    base_property is the strongest declared property of the base: FLAT implies
    RICCI_FLAT and LOCALLY_SYMMETRIC; RICCI_FLAT is EINSTEIN with constant 0.
    For EINSTEIN, base_einstein_constant gives the constant.

    The tangent-bundle statements follow with r = n and
    flat_connection = (base_property is FLAT).
    """
    base_property = BaseProperty(base_property)
    sasaki = _is_pair(params, 0.0, 0.0)
    stereographic = _is_pair(params, 2.0, 0.0)
    rigid = flat_connection and (sasaki or stereographic)

    if base_property in (BaseProperty.FLAT, BaseProperty.RICCI_FLAT):
        base_lambda: Optional[float] = 0.0
    elif base_property is BaseProperty.EINSTEIN:
        if base_einstein_constant is None:
            raise InvalidParameterError("an Einstein base needs base_einstein_constant")
        base_lambda = float(base_einstein_constant)
    else:
        base_lambda = None

    einstein_constant: Optional[float] = None
    if flat_connection and base_lambda is not None:
        if sasaki and base_lambda == 0.0:
            einstein_constant = 0.0
        elif stereographic and base_lambda == 4.0 * (r - 1):
            einstein_constant = 4.0 * (r - 1)

    locally_symmetric = rigid and base_property in (BaseProperty.LOCALLY_SYMMETRIC, BaseProperty.FLAT)
    flat = sasaki and flat_connection and base_property is BaseProperty.FLAT
    return SpecialStructures(
        einstein=einstein_constant is not None,
        einstein_constant=einstein_constant,
        locally_symmetric=locally_symmetric,
        constant_sectional=flat,
        flat=flat,
    )


# -- numerical checks ------------------------------------------------------------


def sampled_scalar_spread(
    bundle: EuclideanBundle, params: CGParams, samples: int = 10, seed: int = 0
) -> Tuple[List[float], float]:
    """Oracle scalar curvature of h_{p,q} at seeded points and max - min."""
    field_ = cg_metric_field(bundle, params)
    values = [
        curvature_report(field_, pt.coordinates).scalar
        for pt in random_total_points(bundle, samples, seed=seed)
    ]
    return values, float(max(values) - min(values))


@dataclass(frozen=True)
class PrincipalCheckReport:
    n: int
    c: float
    k: float
    samples: int
    max_principal_curvature: float
    max_ricci_error: float
    max_scalar_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return max(self.max_principal_curvature, self.max_ricci_error, self.max_scalar_error) <= self.tolerance


def vanishing_principal_checks(
    sf: SpaceForm, samples: int = 5, seed: int = 0, tolerance: float = 1e-8
) -> PrincipalCheckReport:
    """
    On AO(M, 2/c): the connection curvature vanishes, and
    sum_i |H_{e_j} e_i|^2 = ric^M(e_j, e_j) = (n-1)c, sum_j of it = s^M = n(n-1)c.

    Raises:
        InvalidParameterError: if c <= 0
    """
    if not sf.c > 0:
        raise InvalidParameterError(f"vanishing principal curvature needs c > 0, got {sf.c}")
    k = 2.0 / sf.c
    bundle = build_atiyah_bundle(sf, AtiyahParams(k))
    expected_ricci = (sf.n - 1) * sf.c

    max_curv = max_ricci = max_scalar = 0.0
    for x in random_points(sf, samples, seed=seed):
        curvature = frame_connection_curvature(bundle, x)
        max_curv = max(max_curv, float(np.max(np.abs(curvature))))

        H = atiyah_h_tensor(bundle, x)
        h_ricci = np.einsum("jiP,jiP->j", H, H)
        report = curvature_report(sf.metric_field, x)
        frame = orthonormal_frame(sf, x)
        oracle_ricci = np.einsum("ja,ab,jb->j", frame, report.ricci, frame)
        max_ricci = max(
            max_ricci,
            float(np.max(np.abs(h_ricci - expected_ricci))),
            float(np.max(np.abs(h_ricci - oracle_ricci))),
        )
        h_scalar = float(np.sum(h_ricci))
        max_scalar = max(
            max_scalar,
            abs(h_scalar - sf.scalar_curvature),
            abs(h_scalar - report.scalar),
        )
    logger.debug(
        "%s, k=%g: |R|max=%.3e ricci err=%.3e scalar err=%.3e",
        sf.name, k, max_curv, max_ricci, max_scalar,
    )
    return PrincipalCheckReport(
        n=sf.n,
        c=sf.c,
        k=k,
        samples=samples,
        max_principal_curvature=max_curv,
        max_ricci_error=max_ricci,
        max_scalar_error=max_scalar,
        tolerance=tolerance,
    )


@dataclass(frozen=True)
class SymmetricSpaceReport:
    n: int
    c: float
    params: CGParams
    predicted_scalar: float
    oracle_scalars: List[float] = field(default_factory=list)
    einstein_parameter: float = 0.0
    einstein: bool = False
    min_sectional: float = 0.0

    @property
    def spread(self) -> float:
        return float(max(self.oracle_scalars) - min(self.oracle_scalars))

    @property
    def max_abs_error(self) -> float:
        return float(max(abs(s - self.predicted_scalar) for s in self.oracle_scalars))

    @property
    def sectional_nonnegative(self) -> bool:
        return self.min_sectional >= -1e-8


def symmetric_space_report(
    sf: SpaceForm,
    params: CGParams,
    samples: int = 5,
    seed: int = 0,
    planes: int = 200,
) -> SymmetricSpaceReport:
    """
    h_{0,0} and h_{2,0} on AO(M, 2/c): predicted constant scalar curvature
    n(n-1)c, resp. n(n-1)c + 4r(r-1), checked against the oracle; the
    Einstein case c = 4(r-1)/(n-1) is flagged for h_{2,0}. The minimum
    sectional curvature over random planes is recorded and a warning logged
    when it is negative.

    Raises:
        InvalidParameterError: if c <= 0 or (p, q) is not a rigid pair
    """
    if not sf.c > 0:
        raise InvalidParameterError(f"AO(M, 2/c) needs c > 0, got {sf.c}")
    r = AtiyahParams.rank(sf.n)
    predicted = predicted_constant_scalar(sf, params, r)
    if predicted is None:
        raise InvalidParameterError(f"{params.label} is not one of the rigid pairs (0,0), (2,0)")

    bundle = build_atiyah_bundle(sf, AtiyahParams(2.0 / sf.c))
    field_ = cg_metric_field(bundle, params)
    rng = np.random.default_rng(seed)

    scalars = []
    min_sectional = np.inf
    points = random_total_points(bundle, samples, seed=seed)
    per_point = max(1, planes // max(1, len(points)))
    for pt in points:
        report = curvature_report(field_, pt.coordinates, Convention.NEGATED)
        scalars.append(report.scalar)
        for _ in range(per_point):
            u, v = rng.standard_normal((2, bundle.dim))
            try:
                value = sectional_curvature(report, report.metric, u, v)
            except DegeneratePlaneError:
                continue
            min_sectional = min(min_sectional, value)

    einstein_parameter = 4.0 * (r - 1) / (sf.n - 1)
    einstein = _is_pair(params, 2.0, 0.0) and bool(np.isclose(sf.c, einstein_parameter))
    result = SymmetricSpaceReport(
        n=sf.n,
        c=sf.c,
        params=params,
        predicted_scalar=predicted,
        oracle_scalars=scalars,
        einstein_parameter=einstein_parameter,
        einstein=einstein,
        min_sectional=float(min_sectional),
    )
    if not result.sectional_nonnegative:
        logger.warning(
            "%s with h%s: sampled sectional curvature %.3e < 0",
            bundle.name, params.label, result.min_sectional,
        )
    return result
