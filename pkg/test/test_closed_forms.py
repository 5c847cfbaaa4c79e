"""
Tests for the closed-form fiber, total-space and Atiyah curvature formulas.
"""

import itertools

import numpy as np
import pytest

from cg_lab.core.errors import InvalidParameterError
from cg_lab.formulas.closed_forms import (
    atiyah_scalar,
    atiyah_scalar_from_norms,
    atiyah_scalar_general,
    b_norm_squared,
    fiber_ricci,
    fiber_scalar,
    fiber_scalar_continued,
    fiber_scalar_derivative,
    fiber_sectional,
    fiber_weights,
    predicted_constant_scalar,
    scalar_polynomial_coeffs,
    total_scalar_E,
    varpi,
)
from cg_lab.formulas.positivity import positivity_constants
from cg_lab.geometry.bundles import AtiyahParams, CGParams, build_atiyah_bundle, build_flat_bundle, build_tangent_bundle
from cg_lab.geometry.so_algebra import SkewEndomorphism, wedge
from cg_lab.geometry.space_forms import SpaceForm
from cg_lab.verification.cases import central_derivative

PARAM_GRID = [CGParams(0, 0), CGParams(1, 1), CGParams(2, 0), CGParams(-1, 2), CGParams(0.5, 3)]
T_GRID = [0.0, 0.3, 1.0, 4.0]


def adapted_frame(a, rng):
    """Orthonormal fiber frame whose first vector is a/|a| (any frame when a = 0)."""
    r = len(a)
    if not np.any(a):
        return np.eye(r)
    q, _ = np.linalg.qr(np.column_stack([a, rng.standard_normal((r, r - 1))]))
    return q.T


def fiber_vector(r, t, rng):
    d = rng.standard_normal(r)
    return np.sqrt(t) * d / np.linalg.norm(d)


def test_fiber_weights_examples():
    w = fiber_weights(CGParams(0, 0), 2.0)
    assert (w.F, w.G) == (0.0, 0.0)

    w = fiber_weights(CGParams(2, 0), 3.0)
    assert w.F == 0.0
    assert w.G == pytest.approx(4.0 * w.omega**2)

    w = fiber_weights(CGParams(1, 1), 0.0)
    assert (w.omega, w.omega_q, w.F, w.G) == (1.0, 1.0, 0.0, 3.0)

    with pytest.raises(InvalidParameterError):
        fiber_weights(CGParams(1, 1), -1.0)


def test_fiber_sectional_examples(rng):
    e = np.eye(3)
    a = np.array([0.4, -1.0, 2.0])
    assert fiber_sectional(CGParams(0, 0), a, e[0], e[1]) == 0.0
    assert fiber_sectional(CGParams(2, 0), a, e[0], e[2]) == pytest.approx(4.0)
    assert fiber_sectional(CGParams(1, 1), np.zeros(3), e[1], e[2]) == pytest.approx(3.0)
    with pytest.raises(InvalidParameterError):
        fiber_sectional(CGParams(1, 1), a, e[0], e[0] + e[1])


def test_fiber_ricci_examples(rng):
    alpha, beta = rng.standard_normal((2, 3))
    a = rng.standard_normal(3)
    assert fiber_ricci(CGParams(0, 0), a, alpha, beta) == 0.0
    assert fiber_ricci(CGParams(1, 1), np.zeros(3), alpha, beta) == pytest.approx(6.0 * alpha @ beta)
    for params in PARAM_GRID:
        assert fiber_ricci(params, a, alpha, beta) == pytest.approx(fiber_ricci(params, a, beta, alpha))


def test_fiber_scalar_examples():
    for t in T_GRID:
        assert fiber_scalar(CGParams(0, 0), 3, t) == 0.0
        assert fiber_scalar(CGParams(2, 0), 2, t) == pytest.approx(8.0)
        assert fiber_scalar(CGParams(2, 0), 5, t) == pytest.approx(80.0)
    assert fiber_scalar(CGParams(1, 1), 3, 0.0) == pytest.approx(18.0)


def test_cheeger_gromoll_cubic_coefficients():
    for r in range(1, 8):
        k = scalar_polynomial_coeffs(CGParams(1, 1), r)
        assert (k.e, k.b, k.c, k.d) == (r - 2, 4 * (r - 2), 6 * (r - 1), 3 * r)


@pytest.mark.parametrize("params", [CGParams(0, 0), CGParams(2, 0)])
def test_rigid_pairs_have_vanishing_derivative_coefficients(params):
    for r in (2, 3, 6):
        k = scalar_polynomial_coeffs(params, r)
        assert (k.a1, k.b1, k.c1, k.d1, k.e1) == (0, 0, 0, 0, 0)
        for t in T_GRID:
            assert fiber_scalar_derivative(params, r, t) == 0.0


def test_derivative_example():
    assert fiber_scalar_derivative(CGParams(1, 1), 3, 0.0) == pytest.approx(-30.0)


@pytest.mark.parametrize("params", [CGParams(0, 0), CGParams(1, 1), CGParams(2, 0), CGParams(-1, 2)])
@pytest.mark.parametrize("r", [2, 3, 6])
def test_derivative_matches_central_difference(params, r):
    for t in np.linspace(0.0, 5.0, 21):
        exact = fiber_scalar_derivative(params, r, t)
        approx = central_derivative(lambda s: fiber_scalar_continued(params, r, s), t)
        assert abs(exact - approx) < 1e-7 * (1.0 + abs(exact))


@pytest.mark.parametrize("params", PARAM_GRID, ids=lambda p: p.label)
@pytest.mark.parametrize("r", [2, 3])
def test_sectional_sum_and_ricci_trace_give_the_scalar(params, r, rng):
    for t in T_GRID:
        a = fiber_vector(r, t, rng)
        frame = adapted_frame(a, rng)
        expected = fiber_scalar(params, r, t)

        sectional_sum = sum(
            fiber_sectional(params, a, frame[i], frame[j])
            for i, j in itertools.permutations(range(r), 2)
        )
        assert abs(sectional_sum - expected) < 1e-9 * max(1.0, abs(expected))

        ricci = np.array([[fiber_ricci(params, a, u, v) for v in frame] for u in frame])
        w = fiber_weights(params, t)
        h = w.omega**params.p * (np.eye(r) + params.q * np.outer(frame @ a, frame @ a))
        trace = float(np.trace(np.linalg.solve(h, ricci)))
        assert abs(trace - expected) < 1e-9 * max(1.0, abs(expected))


def test_total_scalar_examples():
    flat_tm = build_tangent_bundle(SpaceForm(2, 0.0))
    pt = flat_tm.point([0.3, 0.1], [1.0, 2.0])
    assert total_scalar_E(CGParams(0, 0), flat_tm, pt) == pytest.approx(0.0, abs=1e-12)
    assert total_scalar_E(CGParams(2, 0), flat_tm, pt) == pytest.approx(8.0)

    sphere_tm = build_tangent_bundle(SpaceForm(2, 1.0))
    zero = sphere_tm.point([0.5, -0.5], [0.0, 0.0])
    assert total_scalar_E(CGParams(1, 1), sphere_tm, zero) == pytest.approx(8.0)

    trivial = build_flat_bundle(SpaceForm(3, 1.0), 4)
    pt = trivial.point([0.1, 0.2, 0.3], [1.0, 0.0, 0.0, 1.0])
    assert total_scalar_E(CGParams(2, 0), trivial, pt) == pytest.approx(6.0 + 48.0)


def test_varpi_examples():
    assert varpi(1.0, 2.0) == 0.0
    assert varpi(1.0, 1.0) == 0.25
    assert varpi(-1.0, 1.0) == -0.75


def test_b_norm_squared_examples():
    F0 = SkewEndomorphism.zero(2)
    assert b_norm_squared(2, 1.0, 2.0, 1.0, [3.0, 1.0], F0) == 0.0
    assert b_norm_squared(2, 1.0, 1.0, 1.0, [1.0, 0.0], F0) == pytest.approx(1.0 / 16.0)

    F = wedge([1.0, 0.0], [0.0, 1.0])
    with_f = b_norm_squared(2, 1.0, 1.0, 0.0, [1.0, 0.0], F)
    assert with_f == pytest.approx(b_norm_squared(2, 1.0, 1.0, 0.0, [1.0, 0.0], F0))


def test_atiyah_scalar_examples():
    for c, k, expected in [(0.0, 1.0, 18.0), (1.0, 2.0, 20.0), (0.5, 4.0, 19.0)]:
        bundle = build_atiyah_bundle(SpaceForm(2, c), AtiyahParams(k))
        pt = bundle.point([0.0, 0.0], np.zeros(3))
        assert atiyah_scalar(2, c, k, pt) == pytest.approx(expected)
    with pytest.raises(InvalidParameterError):
        atiyah_scalar_from_norms(2, 1.0, 0.0, 1.0, 1.0)


def test_atiyah_scalar_positive_when_varpi_vanishes(rng):
    for n, c in [(2, 0.5), (3, 2.0)]:
        k = 2.0 / c
        z2, f2 = 100.0 * rng.random((2, 50))
        assert np.all(atiyah_scalar_from_norms(n, c, k, z2, f2) > 0)


def test_general_atiyah_scalar_reduces_to_cheeger_gromoll(rng):
    bundle = build_atiyah_bundle(SpaceForm(3, 1.0), AtiyahParams(0.5))
    pt = bundle.point([0.1, 0.0, 0.2], rng.standard_normal(6))
    assert atiyah_scalar_general(CGParams(1, 1), 3, 1.0, 0.5, pt) == pytest.approx(
        atiyah_scalar(3, 1.0, 0.5, pt)
    )


def test_boundary_infimum_decreases_toward_zero():
    constants = positivity_constants(2)
    K = constants.K(1.0)
    z = np.linspace(0.0, 50.0, 201)
    values = atiyah_scalar_from_norms(2, 1.0, K, z**2, np.zeros_like(z))
    assert np.all(values > 0)
    assert np.all(np.diff(values) < 0)
    assert values[-1] < 0.01


def test_beyond_the_boundary_turns_negative():
    for n, c in [(2, 1.0), (3, 1.0)]:
        K = positivity_constants(n).K(c)
        z = np.linspace(0.0, 200.0, 401)
        values = atiyah_scalar_from_norms(n, c, 1.05 * K, z**2, np.zeros_like(z))
        assert np.min(values) < 0


def test_predicted_constant_scalar():
    sf = SpaceForm(3, 1.0)
    assert predicted_constant_scalar(sf, CGParams(0, 0), 6) == 6.0
    assert predicted_constant_scalar(sf, CGParams(2, 0), 6) == 6.0 + 120.0
    assert predicted_constant_scalar(sf, CGParams(1, 1), 6) is None
