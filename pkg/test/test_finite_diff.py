"""
Tests for the central-difference cross-check.
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from cg_lab.core.finite_diff import finite_difference_jet, jet_discrepancy, numdiff
from cg_lab.geometry.space_forms import SpaceForm, random_points


def test_numdiff_on_a_polynomial():
    def f(x):
        return np.array([x[0] ** 2 * x[1], np.sin(x[1])])

    jac, hess = numdiff(f, [1.0, 0.5])
    assert_allclose(jac, [[1.0, 1.0], [0.0, np.cos(0.5)]], atol=1e-7)
    assert_allclose(hess[0], [[1.0, 2.0], [2.0, 0.0]], atol=1e-6)
    assert_allclose(hess[1], [[0.0, 0.0], [0.0, -np.sin(0.5)]], atol=1e-6)


def test_numdiff_rejects_bad_step():
    with pytest.raises(ValueError):
        numdiff(lambda x: x, [0.0], step=0.0)


@pytest.mark.parametrize("n, c", [(2, 1.0), (2, -1.0), (3, 0.5), (3, -0.5)])
def test_space_form_jets_agree_with_finite_differences(n, c):
    sf = SpaceForm(n, c)
    for x in random_points(sf, 3, seed=11):
        assert jet_discrepancy(sf.metric_field, x) < 1e-5


def test_finite_difference_jet_shapes():
    sf = SpaceForm(3, 1.0)
    jet = finite_difference_jet(sf.metric_field, [0.1, 0.2, 0.3])
    assert jet.g.shape == (3, 3)
    assert jet.dg.shape == (3, 3, 3)
    assert jet.d2g.shape == (3, 3, 3, 3)
    assert_allclose(jet.d2g, np.swapaxes(jet.d2g, 2, 3))
