"""
Exception hierarchy shared by every layer of the library.
"""


class CGLabError(Exception):
    """Base class for all errors raised by cg_lab."""
    pass


class DomainError(CGLabError):
    """Raised when a point lies outside the admissible domain of a chart."""
    pass


class DegenerateMetricError(CGLabError):
    """Raised when a metric matrix is singular, ill-conditioned or not positive definite."""
    pass


class MetricFieldError(CGLabError):
    """Raised when a metric field returns components that are not a symmetric matrix."""
    pass


class DegeneratePlaneError(CGLabError):
    """Raised when two vectors do not span a plane."""
    pass


class InvalidParameterError(CGLabError, ValueError):
    """Raised when a parameter lies outside its admissible range."""
    pass


class ConfigurationError(InvalidParameterError):
    """Raised when environment configuration (e.g. CG_LAB_THREADS) is invalid."""
    pass
