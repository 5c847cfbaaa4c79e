"""
Polars helpers for assembling and rendering result tables.
"""

from .tables import (
    FORMATS,
    SIGNIFICANT_DIGITS,
    constants_table,
    records_frame,
    render,
    round_frame,
    round_significant,
)

__all__ = [
    "FORMATS",
    "SIGNIFICANT_DIGITS",
    "constants_table",
    "records_frame",
    "render",
    "round_frame",
    "round_significant",
]
