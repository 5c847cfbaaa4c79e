"""
Core numerical components: errors, jet arithmetic, the curvature oracle and
its finite-difference cross-check.
"""

from .errors import (
    CGLabError,
    ConfigurationError,
    DegenerateMetricError,
    DegeneratePlaneError,
    DomainError,
    InvalidParameterError,
    MetricFieldError,
)
from .jets import Jet, contract
from .oracle import (
    Convention,
    CurvatureReport,
    MetricField,
    SecondJet,
    christoffel,
    curvature_from_jet,
    curvature_report,
    second_jet,
    sectional_curvature,
)
from .finite_diff import finite_difference_jet, jet_discrepancy

__all__ = [
    "CGLabError",
    "ConfigurationError",
    "DegenerateMetricError",
    "DegeneratePlaneError",
    "DomainError",
    "InvalidParameterError",
    "MetricFieldError",
    "Jet",
    "contract",
    "Convention",
    "CurvatureReport",
    "MetricField",
    "SecondJet",
    "christoffel",
    "curvature_from_jet",
    "curvature_report",
    "second_jet",
    "sectional_curvature",
    "finite_difference_jet",
    "jet_discrepancy",
]
