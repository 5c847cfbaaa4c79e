"""
Tests for the coordinate curvature oracle.
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from cg_lab.core.errors import DegenerateMetricError, DegeneratePlaneError, DomainError, MetricFieldError
from cg_lab.core.jets import block, contract
from cg_lab.core.oracle import (
    Convention,
    MetricField,
    bianchi_residual,
    christoffel,
    curvature_report,
    metric_compatibility_residual,
    second_jet,
    sectional_curvature,
)
from cg_lab.geometry.space_forms import SpaceForm, random_points


def euclidean(dim):
    return MetricField(dim=dim, components=lambda x: np.eye(dim), name=f"R{dim}")


def polar_plane():
    # dr^2 + r^2 dtheta^2, flat away from r = 0
    def components(x):
        return np.diag([1.0, 0.0]) + (x[0] * x[0]) * np.diag([0.0, 1.0])

    return MetricField(dim=2, components=components, name="polar")


def test_second_jet_of_flat_field():
    jet = second_jet(euclidean(3), [0.3, -1.0, 2.0])
    assert_allclose(jet.g, np.eye(3))
    assert not np.any(jet.dg)
    assert not np.any(jet.d2g)


def test_second_jet_one_dimensional_hand_example():
    field = MetricField(dim=1, components=lambda x: np.eye(1) * (1.0 + x[0] * x[0]))
    jet = second_jet(field, [0.0])
    assert_allclose(jet.g, [[1.0]])
    assert_allclose(jet.dg, [[[0.0]]])
    assert_allclose(jet.d2g, [[[[2.0]]]])


def test_sphere_chart_gradient_vanishes_at_origin():
    jet = second_jet(SpaceForm(2, 1.0).metric_field, [0.0, 0.0])
    assert_allclose(jet.dg, 0.0, atol=1e-15)


def test_christoffel_matches_conformal_hand_formula():
    x = np.array([1.0, 0.0])
    gamma = christoffel(second_jet(SpaceForm(2, 1.0).metric_field, x))

    lam = 1.0 / (1.0 + 0.25 * (x @ x))
    phi = -0.5 * lam * x
    eye = np.eye(2)
    expected = (
        np.einsum("ik,j->kij", eye, phi)
        + np.einsum("jk,i->kij", eye, phi)
        - np.einsum("ij,k->kij", eye, phi)
    )
    assert_allclose(gamma, expected, atol=1e-14)
    assert_allclose(gamma, np.swapaxes(gamma, 1, 2), atol=0.0)


def test_flat_fields_have_no_curvature():
    report = curvature_report(euclidean(3), [1.0, 2.0, 3.0])
    assert not np.any(report.riemann)
    assert report.scalar == 0.0

    polar = curvature_report(polar_plane(), [2.0, 0.7])
    assert_allclose(polar.riemann, 0.0, atol=1e-12)
    assert abs(polar.scalar) < 1e-12


@pytest.mark.parametrize("n, c", [(2, 1.0), (2, -1.0), (3, 1.0), (3, -0.5), (4, 2.0)])
def test_space_form_scalar_curvature(n, c):
    sf = SpaceForm(n, c)
    for x in random_points(sf, 3, seed=7):
        report = curvature_report(sf.metric_field, x)
        assert abs(report.scalar - n * (n - 1) * c) < 1e-9
        assert_allclose(report.ricci, (n - 1) * c * report.metric, atol=1e-9)


def test_hyperbolic_plane_at_origin():
    report = curvature_report(SpaceForm(2, -1.0).metric_field, [0.0, 0.0])
    assert abs(report.scalar + 2.0) < 1e-9


def test_outside_hyperbolic_chart_raises():
    with pytest.raises(DomainError):
        curvature_report(SpaceForm(2, -1.0).metric_field, [2.5, 0.0])


def test_report_invariants(rng):
    sf = SpaceForm(3, 1.0)
    x = random_points(sf, 1, seed=3)[0]
    jet = second_jet(sf.metric_field, x)
    report = curvature_report(sf.metric_field, x)

    assert metric_compatibility_residual(jet, report.christoffel) < 1e-10
    assert bianchi_residual(report) < 1e-9

    lowered = report.lowered_riemann()
    assert_allclose(lowered, -np.swapaxes(lowered, 0, 1), atol=1e-12)
    assert_allclose(lowered, -np.swapaxes(lowered, 2, 3), atol=1e-12)
    assert_allclose(lowered, np.transpose(lowered, (2, 3, 0, 1)), atol=1e-12)


def test_negated_convention_negates_riemann_only():
    sf = SpaceForm(2, 1.0)
    x = [0.4, -0.3]
    textbook = curvature_report(sf.metric_field, x, Convention.TEXTBOOK)
    negated = curvature_report(sf.metric_field, x, Convention.NEGATED)
    assert_allclose(negated.riemann, -textbook.riemann, atol=0.0)
    assert negated.scalar == textbook.scalar
    assert_allclose(negated.ricci, textbook.ricci)


def test_convention_names():
    assert Convention("paper") is Convention.NEGATED
    assert Convention("Paper") is Convention.NEGATED
    assert Convention("negated") is Convention.NEGATED
    assert Convention("textbook") is Convention.TEXTBOOK
    with pytest.raises(ValueError):
        Convention("mixed")

    sf = SpaceForm(2, 1.0)
    x = [0.4, -0.3]
    by_alias = curvature_report(sf.metric_field, x, "paper")
    assert by_alias.convention is Convention.NEGATED
    assert_allclose(by_alias.riemann, curvature_report(sf.metric_field, x, Convention.NEGATED).riemann)


def test_sectional_curvature_of_three_sphere(rng):
    sf = SpaceForm(3, 1.0)
    x = np.array([0.2, 0.1, -0.4])
    lam = 1.0 / (1.0 + 0.25 * (x @ x))
    for convention in Convention:
        report = curvature_report(sf.metric_field, x, convention)
        g = report.metric
        # orthonormal pair in chart coordinates
        u = np.array([1.0, 0.0, 0.0]) / lam
        v = np.array([0.0, 1.0, 0.0]) / lam
        assert abs(sectional_curvature(report, g, u, v) - 1.0) < 1e-9

        a, b = rng.standard_normal((2, 3))
        value = sectional_curvature(report, g, a, b)
        assert abs(value - 1.0) < 1e-9
        assert abs(sectional_curvature(report, g, 2 * a, 3 * b) - value) < 1e-12


def test_sectional_curvature_flat_and_degenerate():
    report = curvature_report(euclidean(2), [0.0, 0.0])
    assert sectional_curvature(report, np.eye(2), [1.0, 0.0], [1.0, 1.0]) == 0.0
    with pytest.raises(DegeneratePlaneError):
        sectional_curvature(report, np.eye(2), [1.0, 2.0], [2.0, 4.0])


def test_product_metric_scalar_is_additive():
    sphere = SpaceForm(2, 1.0)

    def components(y):
        return block([[np.eye(1), np.zeros((1, 2))], [np.zeros((2, 1)), _sphere_block(sphere, y[1:])]])

    field = MetricField(dim=3, components=components, name="R x S2")
    report = curvature_report(field, [0.5, 0.3, -0.2])
    assert abs(report.scalar - 2.0) < 1e-9


def _sphere_block(sf, x):
    lam = 1.0 / (1.0 + 0.25 * sf.c * contract("i,i->", x, x))
    return lam * lam * np.eye(sf.n)


def test_asymmetric_components_rejected():
    field = MetricField(dim=2, components=lambda x: np.array([[1.0, 0.1], [0.0, 1.0]]), name="skewed")
    with pytest.raises(MetricFieldError):
        second_jet(field, [0.0, 0.0])


def test_indefinite_metric_rejected():
    field = MetricField(dim=2, components=lambda x: np.diag([1.0, -1.0]), name="lorentz")
    with pytest.raises(DegenerateMetricError):
        second_jet(field, [0.0, 0.0])


def test_ill_conditioned_metric_rejected():
    field = MetricField(dim=2, components=lambda x: np.diag([1.0, 1e-14]), name="thin")
    with pytest.raises(DegenerateMetricError):
        curvature_report(field, [0.0, 0.0])
