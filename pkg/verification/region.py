"""
(c, k) positivity-region scans for h_{1,1} on AO(M, k).

The closed verdict is the exact positivity predicate. The empirical verdict
is the sign of the minimum of the closed scalar curvature over a bounded
box |Z|, |F| <= FIBER_BOX in the fiber, sampled quasi-randomly. The true
infimum is approached only as |Z| grows without bound, so the two verdicts
may disagree near the boundary of the region; such cells are flagged, and
every cell within one grid step of the boundary is marked as lying in the
boundary band.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict

import numpy as np
import polars as pl

from ..core.errors import InvalidParameterError
from ..formulas.closed_forms import atiyah_scalar_from_norms
from ..formulas.positivity import positivity_constants, positivity_predicate
from .pool import map_ordered

logger = logging.getLogger(__name__)

FIBER_BOX = 10.0
MAX_CELLS = 1_000_000

# additive recurrence from the plastic number; low discrepancy in 2D
_PLASTIC = 1.32471795724474602596
_R2_STEP = np.array([1.0 / _PLASTIC, 1.0 / _PLASTIC**2])


class ScanMode(str, Enum):
    CLOSED = "closed"
    EMPIRICAL = "empirical"
    BOTH = "both"


@dataclass(frozen=True)
class RegionScanConfig:
    """
    A (c, k) grid with inclusive endpoints. sample_points is the number of
    fiber samples per cell in empirical mode (the four box corners are
    always added).

    Raises:
        InvalidParameterError: if a range is not finite, a step count is
            below 2, k_min <= 0, a minimum exceeds its maximum, or the grid
            has more than MAX_CELLS cells
    """

    n: int = 2
    c_min: float = -1.5
    c_max: float = 2.0
    c_steps: int = 15
    k_min: float = 0.25
    k_max: float = 10.0
    k_steps: int = 40
    sample_points: int = 256
    seed: int = 0

    def __post_init__(self):
        positivity_constants(self.n)
        bounds = (self.c_min, self.c_max, self.k_min, self.k_max)
        if not all(np.isfinite(v) for v in bounds):
            raise InvalidParameterError(f"scan ranges must be finite, got {bounds}")
        for name, least in (("c_steps", 2), ("k_steps", 2), ("sample_points", 1)):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < least:
                raise InvalidParameterError(f"{name} must be an integer >= {least}, got {value}")
        if not self.k_min > 0:
            raise InvalidParameterError(f"k_min must be > 0, got {self.k_min}")
        if self.c_min > self.c_max or self.k_min > self.k_max:
            raise InvalidParameterError("range minimum exceeds its maximum")
        if self.cells > MAX_CELLS:
            raise InvalidParameterError(f"grid has {self.cells} cells; at most {MAX_CELLS} allowed")

    @property
    def cells(self) -> int:
        return int(self.c_steps) * int(self.k_steps)

    @property
    def c_values(self) -> np.ndarray:
        return np.linspace(self.c_min, self.c_max, int(self.c_steps))

    @property
    def k_values(self) -> np.ndarray:
        return np.linspace(self.k_min, self.k_max, int(self.k_steps))

    @property
    def c_step(self) -> float:
        return (self.c_max - self.c_min) / (int(self.c_steps) - 1)

    @property
    def k_step(self) -> float:
        return (self.k_max - self.k_min) / (int(self.k_steps) - 1)


def fiber_box_samples(count: int, seed: int = 0) -> np.ndarray:
    """
    (|Z|, |F|) pairs in [0, FIBER_BOX]^2: a seeded shift of the R2 sequence
    plus the four corners. Shape (count + 4, 2).
    """
    shift = np.random.default_rng(seed).random(2)
    idx = np.arange(1, count + 1)[:, None]
    unit = np.mod(shift + idx * _R2_STEP, 1.0)
    corners = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
    return FIBER_BOX * np.vstack([corners, unit])


def _parse_mode(mode) -> ScanMode:
    try:
        return ScanMode(mode)
    except ValueError:
        raise InvalidParameterError(
            f"unknown scan mode {mode!r}; expected closed, empirical or both"
        ) from None


def scan_region(config: RegionScanConfig, mode="both", threads: int = 1) -> pl.DataFrame:
    """
    One row per (c, k) cell, c-major. Columns: n, c, k, K (null where
    undefined), closed, boundary_band, plus empirical_min and empirical in
    empirical mode, plus disagreement in both mode.
    """
    mode = _parse_mode(mode)
    n = int(config.n)
    constants = positivity_constants(n)
    c_step, k_step = config.c_step, config.k_step
    samples = fiber_box_samples(int(config.sample_points), config.seed)
    z2, f2 = samples[:, 0] ** 2, samples[:, 1] ** 2

    cells = [(float(c), float(k)) for c in config.c_values for k in config.k_values]
    logger.debug(
        "scanning %d cells for n=%d (%s mode, %d fiber samples)",
        len(cells), n, mode.value, len(samples),
    )

    def evaluate(cell) -> Dict[str, object]:
        c, k = cell
        K = constants.K(c)
        band = abs(c - constants.C) < c_step or (K is not None and abs(k - K) < k_step)
        row: Dict[str, object] = {
            "n": n,
            "c": c,
            "k": k,
            "K": K,
            "closed": positivity_predicate(n, c, k),
            "boundary_band": bool(band),
        }
        if mode is not ScanMode.CLOSED:
            minimum = float(np.min(atiyah_scalar_from_norms(n, c, k, z2, f2)))
            row["empirical_min"] = minimum
            row["empirical"] = minimum > 0
        if mode is ScanMode.BOTH:
            row["disagreement"] = row["closed"] != row["empirical"]
        return row

    rows = map_ordered(evaluate, cells, threads)
    frame = pl.DataFrame(rows, schema=_schema(mode))

    if mode is ScanMode.BOTH:
        stray = frame.filter(pl.col("disagreement") & ~pl.col("boundary_band")).height
        if stray:
            logger.warning("%d disagreement cells lie outside the boundary band", stray)
    return frame


def _schema(mode: ScanMode) -> Dict[str, pl.DataType]:
    schema = {
        "n": pl.Int64,
        "c": pl.Float64,
        "k": pl.Float64,
        "K": pl.Float64,
        "closed": pl.Boolean,
        "boundary_band": pl.Boolean,
    }
    if mode is not ScanMode.CLOSED:
        schema.update({"empirical_min": pl.Float64, "empirical": pl.Boolean})
    if mode is ScanMode.BOTH:
        schema["disagreement"] = pl.Boolean
    return schema


def region_summary(frame: pl.DataFrame) -> Dict[str, int]:
    """Cell counts of a scan: total, closed-positive, and (when present) disagreements in and out of the band."""
    summary = {
        "cells": frame.height,
        "closed_positive": int(frame["closed"].sum()),
    }
    if "disagreement" in frame.columns:
        summary["disagreements"] = int(frame["disagreement"].sum())
        summary["disagreements_outside_band"] = frame.filter(
            pl.col("disagreement") & ~pl.col("boundary_band")
        ).height
    return summary
