import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cosetym.connection import curvature_reduced
from cosetym.coset_geometry import interior_grid, maurer_cartan_pullback
from cosetym.forms import (
    ChartMismatchError, OneForm, RoundMetric, TwoForm, ZeroForm, exterior_derivative,
    hodge_star_2form, integrate_action_density, integrate_two_form, sphere_quadrature,
    wedge_bracket,
)
from cosetym.lie_core import PAIRING_CONSTANT, SIGMA1, SIGMA2, SIGMA3, pairing

GRID = interior_grid(16, 16)


def test_wedge_bracket_of_constant_pauli_form():
    a = OneForm.make(1, SIGMA1, SIGMA2)
    half = wedge_bracket(a, a).scaled(0.5)
    assert np.allclose(half(0.4, 0.1), 2j * SIGMA3)


def test_wedge_bracket_abelian_vanishes():
    a = OneForm.make(1, lambda t, p: np.sin(t)[..., None, None] * SIGMA3,
                     lambda t, p: np.cos(p)[..., None, None] * SIGMA3)
    assert np.abs(wedge_bracket(a, a)(*GRID)).max() == 0


@given(st.floats(-3, 3))
def test_wedge_bracket_bilinear(s):
    a = OneForm.make(1, SIGMA1, 0.5 * SIGMA3)
    b = OneForm.make(1, SIGMA2, SIGMA1)
    lhs = wedge_bracket(a.scaled(s), b)(0.3, 0.2)
    assert np.allclose(lhs, s * wedge_bracket(a, b)(0.3, 0.2))


def test_chart_mismatch():
    with pytest.raises(ChartMismatchError):
        wedge_bracket(OneForm.make(1, SIGMA1), OneForm.make(2, SIGMA1))
    with pytest.raises(ChartMismatchError):
        OneForm.make(1, SIGMA1) + OneForm.make(2, SIGMA1)


def test_exterior_derivative_examples():
    t, p = GRID
    a = OneForm.make(1, None, lambda t, p: (1 - np.cos(t))[..., None, None] * np.eye(2))
    assert np.abs(exterior_derivative(a)(t, p) - np.sin(t)[..., None, None] * np.eye(2)).max() < 1e-8
    const = OneForm.make(1, SIGMA1)
    assert np.abs(exterior_derivative(const)(t, p)).max() == 0
    h, _ = maurer_cartan_pullback(1)
    want = (0.5j * np.sin(t))[..., None, None] * SIGMA3
    assert np.abs(exterior_derivative(h)(t, p) - want).max() < 1e-8


def test_exterior_derivative_rejects_bad_input():
    with pytest.raises(ValueError):
        exterior_derivative(OneForm.make(1, SIGMA1), step=0)
    with pytest.raises(TypeError):
        exterior_derivative(TwoForm(1, lambda t, p: SIGMA1))


def test_d_squared_vanishes():
    f = ZeroForm(1, lambda t, p: (np.exp(np.cos(t)) * np.sin(2 * p))[..., None, None] * SIGMA3)
    dd = exterior_derivative(exterior_derivative(f, 1e-4), 1e-4)
    assert np.abs(dd(*GRID)).max() < 1e-5


def test_hodge_star_examples():
    t, p = GRID
    x = 1j * SIGMA2
    f = TwoForm(1, lambda t, p: np.sin(t)[..., None, None] * x)
    for r in (1.0, 2.0, 0.5):
        star = hodge_star_2form(f, RoundMetric(r))(t, p)
        assert np.abs(star - x / r ** 2).max() < 1e-14
    zero = TwoForm(1, lambda t, p: 0 * np.sin(t)[..., None, None] * x)
    assert np.abs(hodge_star_2form(zero, RoundMetric(1.0))(t, p)).max() == 0


def test_hodge_star_rejects_pole_and_bad_radius():
    f = TwoForm(1, lambda t, p: np.ones(np.shape(t))[..., None, None] * SIGMA3)
    with pytest.raises(ValueError):
        hodge_star_2form(f, RoundMetric(1.0))(0.0, 0.0)
    with pytest.raises(ValueError):
        RoundMetric(0.0)


def test_hodge_isometry_pointwise():
    t, p = interior_grid(32, 32)
    F = curvature_reduced(1, 0.2 - 0.9j, 1)
    r = 1.3
    metric = RoundMetric(r)
    star = hodge_star_2form(F, metric)(t, p)
    sqrt_det = metric.sqrt_det(t)
    # <F ^ *F> has dtheta ^ dphi coefficient <F_coeff, *F>
    lhs = pairing(F(t, p), star)
    rhs = pairing(star, star) * sqrt_det
    assert np.abs(lhs - rhs).max() < 1e-12


def test_quadrature_weights_and_caching():
    theta, phi, w = sphere_quadrature(64, 16)
    assert w.sum() == pytest.approx(4 * np.pi, rel=1e-14)
    assert theta.min() > 0 and theta.max() < np.pi
    assert sphere_quadrature(64, 16)[0] is theta
    with pytest.raises(ValueError):
        w[0] = 1.0
    with pytest.raises(ValueError):
        sphere_quadrature(0, 4)


def test_integrate_action_density_examples():
    metric = RoundMetric(1.0)
    F0 = curvature_reduced(1, 0.0, 1)
    raw = integrate_action_density(F0, metric, lambda x, y: pairing(x, y, 1.0))
    # F0 = i sigma3 sin(theta): <*F, *F> = tr((i sigma3)^2) = -2 everywhere
    assert raw == pytest.approx(-2 * 4 * np.pi, rel=1e-14)
    zero = TwoForm(1, lambda t, p: np.zeros(np.shape(t) + (2, 2), complex))
    assert integrate_action_density(zero, metric) == 0
    assert integrate_action_density(F0, metric) == pytest.approx(-2 * 4 * np.pi * PAIRING_CONSTANT)


def test_quadrature_order_doubling_is_stable():
    metric = RoundMetric(1.0)
    F0 = curvature_reduced(1, 0.0, 1)
    a = integrate_action_density(F0, metric, None, 64)
    b = integrate_action_density(F0, metric, None, 128)
    assert abs(a - b) < 1e-12


def test_integrate_action_density_scales_with_radius():
    F = curvature_reduced(1, 0.4, 1)
    a = integrate_action_density(F, RoundMetric(1.0))
    b = integrate_action_density(F, RoundMetric(2.0))
    assert b == pytest.approx(a / 4, rel=1e-14)


@pytest.mark.parametrize("order", [8, 32, 64, 128])
def test_monopole_flux(order):
    flux = integrate_two_form(curvature_reduced(1, 0.0, 1), order)
    assert np.allclose(flux, 4j * np.pi * SIGMA3, atol=1e-12)
