"""
Central-difference cross-check for the jet-based second derivatives.
"""

import logging
from typing import Callable

import numpy as np

from .oracle import MetricField, SecondJet, second_jet

logger = logging.getLogger(__name__)

DEFAULT_STEP = 1e-4


def numdiff(f: Callable[[np.ndarray], np.ndarray], x, step: float = DEFAULT_STEP):
    """
    Jacobian and Hessian of f: R^n -> R^m by second-order central differences.

    Args:
        f: function of a coordinate vector returning a flat array
        x: point, shape (n,)
        step: finite difference step

    Returns:
        (jacobian (m, n), hessian (m, n, n))
    """
    x = np.asarray_chkfinite(x, dtype=float)
    if x.ndim != 1:
        raise ValueError(f"x must be a vector, got shape {x.shape}")
    if not (np.isfinite(step) and step > 0):
        raise ValueError(f"step must be positive, got {step}")

    fcc = np.ravel(f(x))
    n = len(x)
    jac = np.empty((len(fcc), n))
    hess = np.empty((len(fcc), n, n))

    fcc2 = 2 * fcc
    step2 = 2 * step
    stepsq = step**2
    stepsq2 = 2 * stepsq

    a = np.array(x)
    for i in range(n):
        a[i] = x[i] + step
        frc = np.ravel(f(a))
        a[i] = x[i] - step
        flc = np.ravel(f(a))
        a[i] = x[i]

        jac[:, i] = (frc - flc) / step2
        frclc = frc + flc
        hess[:, i, i] = (frclc - fcc2) / stepsq

        for j in range(i + 1, n):
            a[i] = x[i] + step
            a[j] = x[j] + step
            frr = np.ravel(f(a))
            a[i] = x[i]
            fcr = np.ravel(f(a))
            a[j] = x[j] - step
            fcl = np.ravel(f(a))
            a[i] = x[i] - step
            fll = np.ravel(f(a))
            a[i] = x[i]
            a[j] = x[j]

            fcrcl = fcr + fcl
            hess[:, i, j] = (frr + fll - frclc - fcrcl + fcc2) / stepsq2
            hess[:, j, i] = hess[:, i, j]

    return jac, hess


def finite_difference_jet(field: MetricField, x, step: float = DEFAULT_STEP) -> SecondJet:
    """Second jet of a metric field estimated by central differences."""
    x = field.check_point(x)
    dim = field.dim
    jac, hess = numdiff(field.evaluate, x, step=step)
    g = field.evaluate(x)
    return SecondJet(
        g=g,
        dg=jac.reshape(dim, dim, dim),
        d2g=hess.reshape(dim, dim, dim, dim),
    )


def jet_discrepancy(field: MetricField, x, step: float = DEFAULT_STEP) -> float:
    """
    Largest relative disagreement between the exact and the finite-difference
    first and second derivatives, |delta| / max(1, |exact|) per component.
    """
    exact = second_jet(field, x)
    approx = finite_difference_jet(field, x, step=step)
    worst = 0.0
    for a, b in ((exact.dg, approx.dg), (exact.d2g, approx.d2g)):
        rel = np.abs(a - b) / np.maximum(1.0, np.abs(a))
        worst = max(worst, float(np.max(rel)))
    logger.debug("%s: jet vs finite difference discrepancy %.3e at %s", field.name, worst, x)
    return worst
