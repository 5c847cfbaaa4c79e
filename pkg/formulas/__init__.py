"""
Closed-form curvature formulas, the positivity region and the rigidity
classifications.
"""

from .closed_forms import (
    atiyah_scalar,
    b_norm_squared,
    fiber_ricci,
    fiber_scalar,
    fiber_scalar_derivative,
    fiber_sectional,
    fiber_weights,
    total_scalar_E,
    varpi,
)
from .positivity import positivity_constants, positivity_predicate
from .rigidity import classify_fiber_constancy, classify_special_structures, scalar_rigidity

__all__ = [
    "atiyah_scalar",
    "b_norm_squared",
    "fiber_ricci",
    "fiber_scalar",
    "fiber_scalar_derivative",
    "fiber_sectional",
    "fiber_weights",
    "total_scalar_E",
    "varpi",
    "positivity_constants",
    "positivity_predicate",
    "classify_fiber_constancy",
    "classify_special_structures",
    "scalar_rigidity",
]
