"""
Tests for the positivity constants, the positivity predicate and the
alpha-polynomial form of the Atiyah scalar curvature.
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from cg_lab.core.errors import InvalidParameterError
from cg_lab.formulas.closed_forms import atiyah_scalar_from_norms
from cg_lab.formulas.positivity import (
    TWO_DIM_THRESHOLD,
    atiyah_alpha_polynomial,
    positivity_constants,
    positivity_predicate,
)
from cg_lab.verification.region import fiber_box_samples

# rounded as printed; the formula gives -2.385, -3.708, -5.139, -6.693, -39.709
PUBLISHED_THRESHOLDS = {3: -2.3, 4: -3.7, 5: -5.1, 6: -6.6, 20: -39.7}


@pytest.mark.parametrize("n,expected", sorted(PUBLISHED_THRESHOLDS.items()))
def test_thresholds_match_published_values(n, expected):
    assert abs(positivity_constants(n).C - expected) < 0.1


def test_threshold_formula_for_n_at_least_three():
    for n in range(3, 12):
        k = positivity_constants(n)
        assert k.r == n * (n + 1) // 2
        assert (k.a, k.b, k.d) == (n * (n - 1), (k.r - 1) * (k.r - 2), 4 * (n - 2))
        assert k.C == pytest.approx(2 * (k.a - np.sqrt(k.a**2 + k.b * k.d)) / k.d)
        assert k.C < 0


def test_two_dimensional_threshold():
    assert abs(positivity_constants(2).C - 2 * (1 - np.sqrt(2))) < 1e-12
    assert TWO_DIM_THRESHOLD == pytest.approx(-0.8284271247)


@pytest.mark.parametrize("n", [1, 0, 2.5])
def test_invalid_dimension(n):
    with pytest.raises(InvalidParameterError):
        positivity_constants(n)


def test_k_bound():
    k2 = positivity_constants(2)
    assert k2.K(1.0) == pytest.approx(2 + 4 * np.sqrt(2))
    assert k2.K(0.0) is None
    assert k2.K(-0.9) is None
    assert k2.K(k2.C) is None

    k3 = positivity_constants(3)
    assert k3.K(1.0) == pytest.approx(2 * (4 + 2 * 2 * np.sqrt(26)) / 4)
    for c in (-2.0, -1.0, 0.5, 2.0):
        assert k3.K(c) > 0


def test_predicate_examples():
    K = positivity_constants(2).K(1.0)
    assert positivity_predicate(2, 1.0, K)
    assert not positivity_predicate(2, 1.0, np.nextafter(K, np.inf))
    for k in (0.01, 1.0, 100.0):
        assert positivity_predicate(2, 0.0, k)
        assert not positivity_predicate(2, -0.9, k)
    with pytest.raises(InvalidParameterError):
        positivity_predicate(2, 1.0, 0.0)
    with pytest.raises(InvalidParameterError):
        positivity_predicate(2, 1.0, float("nan"))


def test_infimum_sign_at_and_beyond_the_bound():
    K = positivity_constants(2).K(1.0)
    samples = fiber_box_samples(256, seed=0)
    z2, f2 = samples[:, 0] ** 2, samples[:, 1] ** 2
    assert np.min(atiyah_scalar_from_norms(2, 1.0, K, z2, f2)) > 0
    assert atiyah_scalar_from_norms(2, 1.0, 1.05 * K, 900.0, 0.0) < 0


def test_truth_table_matches_the_quadratic_coefficient():
    """
    For n = 2 the scalar curvature is positive everywhere exactly when the
    leading alpha coefficient 2(c + 1 - varpi^2) is non-negative.
    """
    cs = np.linspace(-1.4, 4.0, 20)
    ks = np.linspace(0.1, 12.0, 20)
    for c in cs:
        for k in ks:
            quadratic = atiyah_alpha_polynomial(2, c, k).quadratic
            assert positivity_predicate(2, c, k) == (quadratic >= 0), (c, k)


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("c,k", [(1.0, 1.0), (-0.5, 2.0), (2.0, 0.3), (0.0, 5.0)])
def test_alpha_polynomial_matches_scalar(n, c, k, rng):
    poly = atiyah_alpha_polynomial(n, c, k)
    assert poly.residual >= 0
    for z2, f2 in 5.0 * rng.random((10, 2)):
        alpha = 1.0 + z2 + f2
        residual_norm2 = f2 if poly.residual_part == "F" else z2
        expected = alpha**2 * atiyah_scalar_from_norms(n, c, k, z2, f2)
        assert_allclose(poly.evaluate(alpha, residual_norm2), expected, rtol=1e-10, atol=1e-10)
