"""
Main Engine class - public API for curvature computations and checks.
"""

import logging
from typing import Iterable, Optional, Sequence

import numpy as np
import polars as pl

from .core.errors import InvalidParameterError
from .core.oracle import curvature_report
from .formulas.closed_forms import atiyah_scalar, atiyah_scalar_general, total_scalar_E
from .geometry.bundles import (
    AtiyahParams,
    CGParams,
    build_atiyah_bundle,
    build_tangent_bundle,
    cg_metric_field,
)
from .geometry.space_forms import SpaceForm
from .polars_utils.tables import constants_table
from .verification.cases import CaseOptions, Tolerances, VerificationReport, relative_error, run_case
from .verification.pool import resolve_threads
from .verification.region import RegionScanConfig, region_summary, scan_region

logger = logging.getLogger(__name__)

PACKAGE_LOGGER = "cg_lab"
MODELS = ("tm", "atiyah")


def _install_debug_handler() -> None:
    root = logging.getLogger(PACKAGE_LOGGER)
    root.setLevel(logging.DEBUG)
    if not any(getattr(h, "_cg_lab_debug", False) for h in root.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        handler._cg_lab_debug = True
        root.addHandler(handler)


class Engine:
    """
    Main interface for building bundle metrics and checking their curvature.

    Usage:
        engine = Engine(debug=True)
        engine.scalar("atiyah", n=2, c=1.0, k=2.0)["closed"]   # 20.0
        report = engine.verify("sasaki-flat", samples=10)
        report.passed
    """

    def __init__(
        self,
        debug: bool = False,
        threads: Optional[int] = None,
        seed: int = 0,
        tolerances: Optional[Tolerances] = None,
    ):
        """
        Initialize a new engine instance.

        Args:
            debug: If True, logs every stage and per-sample detail to stderr
            threads: Worker count for sample-parallel work; None means
                     min(8, cpu_count). CG_LAB_THREADS caps either value
            seed: Default seed for sampled checks and scans
            tolerances: Acceptance tolerances (defaults per Tolerances)

        Raises:
            ConfigurationError: If the thread count is not a positive integer
        """
        self.debug = debug
        self.threads = resolve_threads(threads)
        self.seed = int(seed)
        self.tolerances = tolerances or Tolerances()
        if debug:
            _install_debug_handler()
            logger.info("=" * 60)
            logger.info("CG-LAB ENGINE - DEBUG MODE (%d threads)", self.threads)
            logger.info("=" * 60)

    def constants(self, n_min: int = 2, n_max: int = 6, c_list: Iterable[float] = ()) -> pl.DataFrame:
        """Positivity constants per dimension, with K(n, c) columns for each c in c_list."""
        logger.info("[CONSTANTS] n = %s..%s", n_min, n_max)
        return constants_table(n_min, n_max, c_list)

    def scalar(
        self,
        model: str,
        n: int = 2,
        c: float = 0.0,
        k: Optional[float] = None,
        p: float = 1.0,
        q: float = 1.0,
        x: Optional[Sequence[float]] = None,
        mu: Optional[Sequence[float]] = None,
    ) -> dict:
        """
        Closed-form and oracle scalar curvature of h_{p,q} at one total-space
        point of TM or AO(M, k) over the space form M^n(c).

        Args:
            model: "tm" or "atiyah"
            x: Base point in the conformal chart (default: origin)
            mu: Fiber coordinates (default: zero section)

        Returns:
            Flat record with closed, oracle and rel_diff

        Raises:
            InvalidParameterError: For an unknown model, k <= 0, q < 0 or a
                                   malformed point
            DomainError: If x lies outside the chart
        """
        params = CGParams(p, q)
        sf = SpaceForm(n, c)
        logger.info("[1/3] BUILDING BUNDLE...")
        if model == "tm":
            if k is not None:
                logger.debug("k = %g ignored for the tm model", k)
            bundle = build_tangent_bundle(sf)
        elif model == "atiyah":
            if k is None:
                k = 1.0
            bundle = build_atiyah_bundle(sf, AtiyahParams(k))
        else:
            raise InvalidParameterError(f"unknown model {model!r}; expected one of {', '.join(MODELS)}")

        x = np.zeros(sf.n) if x is None else np.asarray(x, dtype=float)
        mu = np.zeros(bundle.rank) if mu is None else np.asarray(mu, dtype=float)
        pt = bundle.point(x, mu)
        logger.info("  - %s, h%s, point x=%s mu=%s", bundle.name, params.label, pt.x, pt.mu)

        logger.info("[2/3] EVALUATING CLOSED FORM...")
        if model == "tm":
            closed = total_scalar_E(params, bundle, pt)
        elif (params.p, params.q) == (1.0, 1.0):
            closed = atiyah_scalar(sf.n, sf.c, k, pt)
        else:
            closed = atiyah_scalar_general(params, sf.n, sf.c, k, pt)

        logger.info("[3/3] RUNNING CURVATURE ORACLE...")
        oracle = curvature_report(cg_metric_field(bundle, params), pt.coordinates).scalar
        rel_diff = relative_error(abs(closed - oracle), closed)
        logger.info("  closed %.12g, oracle %.12g, relative difference %.3e", closed, oracle, rel_diff)
        return {
            "model": model,
            "n": sf.n,
            "c": sf.c,
            "k": k,
            "p": params.p,
            "q": params.q,
            "closed": closed,
            "oracle": oracle,
            "rel_diff": rel_diff,
        }

    def verify(self, case: str, tolerance: Optional[float] = None, **options) -> VerificationReport:
        """
        Run one verification case. Keyword options are the CaseOptions
        fields (n, c, k, p, q, r, samples, seed); seed defaults to the
        engine seed.

        Raises:
            InvalidParameterError: For an unknown case or invalid options
        """
        options.setdefault("seed", self.seed)
        case_options = CaseOptions(tolerance=tolerance, **options)
        logger.info("[VERIFY] %s with %s", case, case_options)
        report = run_case(case, case_options, self.tolerances, self.threads)
        logger.info(
            "[VERIFY] %s: %s (max rel err %.3e, tol %.1e)",
            case, "PASS" if report.passed else "FAIL", report.max_rel_err, report.tolerance,
        )
        return report

    def region(self, config: Optional[RegionScanConfig] = None, mode: str = "both") -> pl.DataFrame:
        """
        Scan a (c, k) grid for positive scalar curvature of h_{1,1} on AO(M, k).

        Raises:
            InvalidParameterError: For an invalid grid or mode
        """
        config = config or RegionScanConfig(seed=self.seed)
        logger.info("[SCAN] %d x %d cells, n=%d, mode=%s", config.c_steps, config.k_steps, config.n, mode)
        frame = scan_region(config, mode, self.threads)
        logger.info("[SCAN] %s", region_summary(frame))
        return frame
