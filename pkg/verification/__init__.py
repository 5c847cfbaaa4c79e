"""
Verification layer: oracle-versus-closed-form cases, (c, k) region scans
and the worker pool they share.
"""

from .cases import (
    CASES,
    CaseOptions,
    Tolerances,
    VerificationReport,
    central_derivative,
    relative_error,
    run_case,
)
from .pool import map_ordered, resolve_threads
from .region import RegionScanConfig, ScanMode, fiber_box_samples, region_summary, scan_region

__all__ = [
    "CASES",
    "CaseOptions",
    "Tolerances",
    "VerificationReport",
    "central_derivative",
    "relative_error",
    "run_case",
    "map_ordered",
    "resolve_threads",
    "RegionScanConfig",
    "ScanMode",
    "fiber_box_samples",
    "region_summary",
    "scan_region",
]
