"""
cg-lab

Generalized Cheeger-Gromoll metrics h_{p,q} on Euclidean vector bundles and
on the Atiyah bundle AO(M, k) over space forms, with closed-form curvature
formulas checked against an independent coordinate curvature oracle.
"""

from .engine import Engine
from .core.errors import (
    CGLabError,
    ConfigurationError,
    DegenerateMetricError,
    DegeneratePlaneError,
    DomainError,
    InvalidParameterError,
    MetricFieldError,
)
from .core.oracle import Convention, CurvatureReport, MetricField, curvature_report
from .geometry.bundles import AtiyahParams, CGParams, EuclideanBundle, TotalSpacePoint
from .geometry.space_forms import SpaceForm
from .verification.cases import Tolerances, VerificationReport
from .verification.region import RegionScanConfig

__all__ = [
    "Engine",
    "CGLabError",
    "ConfigurationError",
    "DegenerateMetricError",
    "DegeneratePlaneError",
    "DomainError",
    "InvalidParameterError",
    "MetricFieldError",
    "Convention",
    "CurvatureReport",
    "MetricField",
    "curvature_report",
    "AtiyahParams",
    "CGParams",
    "EuclideanBundle",
    "TotalSpacePoint",
    "SpaceForm",
    "Tolerances",
    "VerificationReport",
    "RegionScanConfig",
]

__version__ = "0.1.0"
