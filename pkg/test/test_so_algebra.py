"""
Tests for skew endomorphisms and the so(n) basis.
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from cg_lab.core.errors import InvalidParameterError
from cg_lab.geometry.so_algebra import (
    SkewEndomorphism,
    so_basis,
    so_coordinates,
    so_matrix,
    so_pairs,
    wedge,
)


def test_wedge_action():
    u, v, w = np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0]), np.array([2.0, 3.0, 5.0])
    W = wedge(u, v)
    # (u ^ v) w = <v, w> u - <u, w> v
    assert_allclose(W.apply(w), 3.0 * u - 2.0 * v)
    assert_allclose(W.matrix, -W.matrix.T)


def test_non_skew_matrix_rejected():
    with pytest.raises(InvalidParameterError):
        SkewEndomorphism(np.array([[0.0, 1.0], [1.0, 0.0]]))
    with pytest.raises(InvalidParameterError):
        SkewEndomorphism(np.zeros((2, 3)))


def test_norm_squared_scales_with_k():
    F = wedge([1.0, 0.0], [0.0, 1.0])
    assert F.norm_squared(1.0) == pytest.approx(2.0)
    assert F.norm_squared(0.5) == pytest.approx(1.0)


def test_commutator_of_rotations_in_three_dimensions():
    e = np.eye(3)
    A, B = wedge(e[0], e[1]), wedge(e[1], e[2])
    C = A.commutator(B)
    assert_allclose(C.matrix, (A.matrix @ B.matrix - B.matrix @ A.matrix))
    assert_allclose(C.matrix, wedge(e[0], e[2]).matrix)
    assert_allclose(A.commutator(A).matrix, 0.0)


def test_arithmetic_keeps_skewness():
    e = np.eye(3)
    A, B = wedge(e[0], e[1]), wedge(e[1], e[2])
    for M in (A + B, A - B, 2.0 * A, A * 3.0, -B):
        assert_allclose(M.matrix, -M.matrix.T)
    assert SkewEndomorphism.zero(4).n == 4


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("k", [0.5, 1.0, 2.0])
def test_coordinates_are_isometric(n, k, rng):
    coords = rng.standard_normal(n * (n - 1) // 2)
    F = so_matrix(coords, n, k)
    assert_allclose(so_coordinates(F, k), coords)
    assert F.norm_squared(k) == pytest.approx(float(coords @ coords))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_basis_is_orthonormal_for_the_k_product(n):
    k = 0.75
    basis = so_basis(n, k)
    assert len(basis) == len(so_pairs(n)) == n * (n - 1) // 2
    gram = np.array([[-k * np.trace(a.matrix @ b.matrix) for b in basis] for a in basis])
    assert_allclose(gram, np.eye(len(basis)), atol=1e-14)


def test_so_matrix_rejects_wrong_length():
    with pytest.raises(InvalidParameterError):
        so_matrix([1.0, 2.0], 3, 1.0)
