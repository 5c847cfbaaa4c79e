"""
Oracle-versus-closed-form verification cases.

Each case compares a closed form against an independent computation at
seeded sample points and reduces the per-sample errors into a
VerificationReport. A failing comparison is a report with passed=False,
never an exception; exceptions are reserved for invalid parameters and
inadmissible points.
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from ..core.errors import InvalidParameterError
from ..core.oracle import curvature_report
from ..formulas.closed_forms import (
    atiyah_scalar,
    atiyah_scalar_general,
    b_norm_squared,
    fiber_scalar,
    fiber_scalar_continued,
    fiber_scalar_derivative,
    total_scalar_E,
)
from ..geometry.bundles import (
    AtiyahParams,
    CGParams,
    atiyah_fiber_coordinates,
    atiyah_fiber_split,
    build_atiyah_bundle,
    build_flat_bundle,
    build_tangent_bundle,
    cg_metric_field,
    fiber_metric_field,
    frame_connection_curvature,
    oneill_norm_squared,
    principal_curvature_atiyah,
    random_total_points,
    xi_form,
)
from ..geometry.space_forms import SpaceForm
from .pool import map_ordered

logger = logging.getLogger(__name__)

FIBER_NORMS = (0.0, 1.0, 2.0)
DERIVATIVE_GRID = tuple(np.linspace(0.0, 5.0, 11))
DERIVATIVE_STEP = 1e-3

# (abs_err, reference) per sample
Sample = Tuple[float, float]


@dataclass(frozen=True)
class Tolerances:
    """Default acceptance tolerances, one per kind of comparison."""

    identities: float = 1e-6
    oracle: float = 1e-5
    flatness: float = 1e-8
    principal: float = 1e-8
    derivative: float = 1e-7

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not (np.isfinite(value) and value > 0):
                raise InvalidParameterError(f"tolerance {name} must be > 0, got {value}")


@dataclass(frozen=True)
class CaseOptions:
    """
    Parameters shared by the verification cases. p and q default per case;
    tolerance overrides the case's default tolerance when given.
    """

    n: int = 2
    c: float = 1.0
    k: float = 1.0
    p: Optional[float] = None
    q: Optional[float] = None
    r: int = 3
    samples: int = 5
    seed: int = 0
    tolerance: Optional[float] = None

    def __post_init__(self):
        if int(self.samples) != self.samples or self.samples < 1:
            raise InvalidParameterError(f"samples must be a positive integer, got {self.samples}")
        if self.tolerance is not None and not self.tolerance > 0:
            raise InvalidParameterError(f"tolerance must be > 0, got {self.tolerance}")

    def params(self, default: CGParams) -> CGParams:
        return CGParams(
            default.p if self.p is None else self.p,
            default.q if self.q is None else self.q,
        )


@dataclass(frozen=True)
class VerificationReport:
    case_name: str
    samples: int
    max_abs_err: float
    max_rel_err: float
    tolerance: float
    details: Dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.max_rel_err <= self.tolerance)

    def to_dict(self) -> Dict[str, object]:
        row = {
            "case_name": self.case_name,
            "samples": self.samples,
            "max_abs_err": self.max_abs_err,
            "max_rel_err": self.max_rel_err,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
        row.update(self.details)
        return row


def relative_error(abs_err: float, reference: float) -> float:
    return float(abs_err / max(1.0, abs(reference)))


def _reduce(case_name: str, samples: List[Sample], tolerance: float, **details) -> VerificationReport:
    abs_errs = [err for err, _ in samples]
    rel_errs = [relative_error(err, ref) for err, ref in samples]
    report = VerificationReport(
        case_name=case_name,
        samples=len(samples),
        max_abs_err=float(max(abs_errs)),
        max_rel_err=float(max(rel_errs)),
        tolerance=float(tolerance),
        details=details,
    )
    logger.debug(
        "%s: %d samples, max abs %.3e, max rel %.3e, tol %.1e -> %s",
        case_name, report.samples, report.max_abs_err, report.max_rel_err,
        report.tolerance, "pass" if report.passed else "FAIL",
    )
    return report


def verify_fiber(options: CaseOptions, tolerances: Tolerances, threads: int = 1) -> VerificationReport:
    """Oracle scalar of the fiber-restricted h_{p,q} against f(|a|^2)."""
    params = options.params(CGParams.stereographic())
    r = int(options.r)
    if r < 2:
        raise InvalidParameterError(f"fiber case needs r >= 2, got {r}")
    bundle = build_flat_bundle(SpaceForm(2, 0.0), r)
    fiber = fiber_metric_field(bundle, params, np.zeros(2))

    rng = np.random.default_rng(options.seed)
    directions = rng.standard_normal((options.samples, r))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    points = [norm * d for norm in FIBER_NORMS for d in directions]

    def sample(mu) -> Sample:
        expected = fiber_scalar(params, r, float(mu @ mu))
        return abs(curvature_report(fiber, mu).scalar - expected), expected

    results = map_ordered(sample, points, threads)
    return _reduce(
        "fiber",
        results,
        options.tolerance or tolerances.identities,
        p=params.p, q=params.q, r=r,
    )


def verify_sasaki_flat(options: CaseOptions, tolerances: Tolerances, threads: int = 1) -> VerificationReport:
    """Riemann tensor of h_{0,0} on TM of flat R^n, componentwise against zero."""
    bundle = build_tangent_bundle(SpaceForm(options.n, 0.0))
    field_ = cg_metric_field(bundle, CGParams.sasaki())
    points = random_total_points(bundle, options.samples, seed=options.seed)

    def sample(pt) -> Sample:
        riemann = curvature_report(field_, pt.coordinates).riemann
        return float(np.max(np.abs(riemann))), 0.0

    results = map_ordered(sample, points, threads)
    return _reduce(
        "sasaki-flat",
        results,
        options.tolerance or tolerances.flatness,
        n=options.n,
    )


def verify_tm_sphere(options: CaseOptions, tolerances: Tolerances, threads: int = 1) -> VerificationReport:
    """s^M + f(t) - xi/(4(1+t)^p) against the oracle on TM of a space form."""
    params = options.params(CGParams.cheeger_gromoll())
    sf = SpaceForm(options.n, options.c)
    bundle = build_tangent_bundle(sf)
    field_ = cg_metric_field(bundle, params)
    points = random_total_points(bundle, options.samples, seed=options.seed)

    def sample(pt) -> Sample:
        expected = total_scalar_E(params, bundle, pt)
        return abs(curvature_report(field_, pt.coordinates).scalar - expected), expected

    results = map_ordered(sample, points, threads)
    return _reduce(
        "tm-sphere",
        results,
        options.tolerance or tolerances.identities,
        n=sf.n, c=sf.c, p=params.p, q=params.q,
    )


def verify_atiyah(options: CaseOptions, tolerances: Tolerances, threads: int = 1) -> VerificationReport:
    """Scalar curvature of h_{p,q} on AO(M, k) against the oracle."""
    params = options.params(CGParams.cheeger_gromoll())
    sf = SpaceForm(options.n, options.c)
    bundle = build_atiyah_bundle(sf, AtiyahParams(options.k))
    field_ = cg_metric_field(bundle, params)
    points = random_total_points(bundle, options.samples, seed=options.seed)
    cheeger_gromoll = (params.p, params.q) == (1.0, 1.0)

    def sample(pt) -> Sample:
        if cheeger_gromoll:
            expected = atiyah_scalar(sf.n, sf.c, options.k, pt)
        else:
            expected = atiyah_scalar_general(params, sf.n, sf.c, options.k, pt)
        return abs(curvature_report(field_, pt.coordinates).scalar - expected), expected

    results = map_ordered(sample, points, threads)
    return _reduce(
        "atiyah",
        results,
        options.tolerance or tolerances.oracle,
        n=sf.n, c=sf.c, k=options.k, p=params.p, q=params.q,
    )


def verify_principal(options: CaseOptions, tolerances: Tolerances, threads: int = 1) -> VerificationReport:
    """
    Closed-form R^{nabla A} against the curvature of the constructed
    connection on every frame pair, and the closed |B|^2 against both the
    oneill_B sum and xi(a, a) / (4 (1+t)^p).
    """
    params = options.params(CGParams.cheeger_gromoll())
    sf = SpaceForm(options.n, options.c)
    atiyah = AtiyahParams(options.k)
    bundle = build_atiyah_bundle(sf, atiyah)
    points = random_total_points(bundle, options.samples, seed=options.seed)
    frame = np.eye(sf.n)

    def sample(pt) -> Sample:
        curvature = frame_connection_curvature(bundle, pt.x)
        Z, F = atiyah_fiber_split(bundle, pt.mu)
        worst, scale = 0.0, 0.0
        for a in range(sf.n):
            for b in range(sf.n):
                Zc, Fc = principal_curvature_atiyah(sf, atiyah, frame[a], frame[b], Z, F)
                closed = atiyah_fiber_coordinates(bundle, Zc, Fc)
                derived = curvature[a, b] @ pt.mu
                worst = max(worst, float(np.max(np.abs(closed - derived))))
                scale = max(scale, float(np.max(np.abs(closed))))

        closed_b = b_norm_squared(sf.n, sf.c, options.k, params.p, Z, F)
        from_b = oneill_norm_squared(bundle, params, pt)
        from_xi = xi_form(bundle, pt.x, pt.mu, pt.mu) / (4.0 * pt.alpha**params.p)
        worst = max(worst, abs(closed_b - from_b), abs(closed_b - from_xi))
        return worst, max(scale, closed_b)

    results = map_ordered(sample, points, threads)
    return _reduce(
        "principal",
        results,
        options.tolerance or tolerances.principal,
        n=sf.n, c=sf.c, k=options.k, p=params.p, q=params.q,
    )


def central_derivative(fn: Callable[[float], float], t: float, step: float = DERIVATIVE_STEP) -> float:
    """Five-point central difference."""
    return (fn(t - 2 * step) - 8 * fn(t - step) + 8 * fn(t + step) - fn(t + 2 * step)) / (12 * step)


def verify_derivative(options: CaseOptions, tolerances: Tolerances, threads: int = 1) -> VerificationReport:
    """Closed-form f'(t) against a central difference of f over t in [0, 5]."""
    params = options.params(CGParams.cheeger_gromoll())
    r = int(options.r)
    if r < 1:
        raise InvalidParameterError(f"rank must be positive, got {r}")

    def f(t: float) -> float:
        return fiber_scalar_continued(params, r, t)

    def sample(t: float) -> Sample:
        expected = fiber_scalar_derivative(params, r, t)
        return abs(central_derivative(f, t) - expected), expected

    results = map_ordered(sample, DERIVATIVE_GRID, threads)
    return _reduce(
        "derivative",
        results,
        options.tolerance or tolerances.derivative,
        p=params.p, q=params.q, r=r,
    )


CASES: Dict[str, Callable[[CaseOptions, Tolerances, int], VerificationReport]] = {
    "fiber": verify_fiber,
    "sasaki-flat": verify_sasaki_flat,
    "tm-sphere": verify_tm_sphere,
    "atiyah": verify_atiyah,
    "principal": verify_principal,
    "derivative": verify_derivative,
}


def run_case(
    name: str,
    options: Optional[CaseOptions] = None,
    tolerances: Optional[Tolerances] = None,
    threads: int = 1,
) -> VerificationReport:
    """
    Raises:
        InvalidParameterError: for an unknown case name
    """
    try:
        case = CASES[name]
    except KeyError:
        raise InvalidParameterError(
            f"unknown verification case {name!r}; expected one of {', '.join(CASES)}"
        ) from None
    return case(options or CaseOptions(), tolerances or Tolerances(), threads)
