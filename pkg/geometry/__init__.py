"""
Space forms, so(n) utilities and Euclidean vector bundles carrying the
generalized Cheeger-Gromoll metrics.
"""

from .bundles import (
    AtiyahParams,
    CGParams,
    EuclideanBundle,
    TotalSpacePoint,
    build_atiyah_bundle,
    build_flat_bundle,
    build_tangent_bundle,
    cg_metric_field,
    connection_map,
    fiber_metric_field,
    horizontal_lift,
    oneill_B,
    vertical_lift,
    xi_form,
)
from .so_algebra import SkewEndomorphism, wedge
from .space_forms import SpaceForm, conformal_metric, curvature_endomorphism

__all__ = [
    "AtiyahParams",
    "CGParams",
    "EuclideanBundle",
    "TotalSpacePoint",
    "build_atiyah_bundle",
    "build_flat_bundle",
    "build_tangent_bundle",
    "cg_metric_field",
    "connection_map",
    "fiber_metric_field",
    "horizontal_lift",
    "oneill_B",
    "vertical_lift",
    "xi_form",
    "SkewEndomorphism",
    "wedge",
    "SpaceForm",
    "conformal_metric",
    "curvature_endomorphism",
]
