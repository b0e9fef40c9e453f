import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nccatenoid.bimodule import (
    BimoduleParams,
    GaussTerm,
    LeftParams,
    RightParams,
    TestFunction,
    act_left,
    bimodule_params_from_display,
    connection,
    curvature_check,
    grid_residual,
    inner_product,
    leibniz_residuals,
    measured_curvature,
    predicted_curvature,
    solve_connection_params,
    standard_test_functions,
    verify_structure,
)
from nccatenoid.errors import ConstraintViolation, DegenerateParams, EqualPlanck, IncompatibleRatio
from nccatenoid.freealg import Letter

XS = np.linspace(-2.5, 2.5, 11)


def test_gauss_term_operations_match_pointwise_formulas():
    t = GaussTerm((1.0, -0.5j, 0.25), rate=0.3, width=0.8, center=0.2)
    direct = lambda x: (1 - 0.5j * x + 0.25 * x * x) * np.exp(0.3 * x - 0.8 * (x - 0.2) ** 2)
    assert np.allclose(t(XS), direct(XS))
    assert np.allclose(t.shifted(0.7)(XS), direct(XS - 0.7))
    h = 1e-6
    fd = (direct(XS + h) - direct(XS - h)) / (2 * h)
    assert np.allclose(t.derivative()(XS), fd, atol=1e-7)


def test_test_function_actions():
    xi = TestFunction.gaussian(1, (1.0, 2.0), width=0.5)
    shifted = xi.shift(0.5, 2)
    assert np.allclose(shifted(XS, 3), xi(XS - 0.5, 1))
    assert np.allclose(shifted(XS, 1), 0)
    m = xi.mul_exp(0.4, -0.3)
    assert np.allclose(m(XS, 1), np.exp(0.4 * XS - 0.3) * xi(XS, 1))
    lin = xi.mul_linear(2.0, 0.5)
    assert np.allclose(lin(XS, 1), (2 * XS + 0.5) * xi(XS, 1))


def test_solved_parameters():
    p = solve_connection_params(1.0, 2.0, 1.0, 1, 2)
    assert (p.left.lambda0, p.left.lambda1) == (-2.0, 1.0)
    assert (p.right.mu0, p.right.mu1, p.right.epsp) == (-2.0, 2.0, 1.0)
    assert predicted_curvature(1.0, 2.0) == pytest.approx(-0.5j)


def test_structure_and_connection_for_solved_parameters():
    p = solve_connection_params(1.0, 2.0, 1.0, 1, 2)
    xis = standard_test_functions()
    rep = verify_structure(p, xis)
    assert rep.max_residual < 1e-9
    assert len(rep.by_section()) == 5
    assert leibniz_residuals(p, xis).max_residual < 1e-9
    curv = curvature_check(p, xis)
    assert abs(curv["measured_mean"] - (-0.5j)) < 1e-9 and curv["max_deviation"] < 1e-9


def test_other_solved_family():
    # r/r' = hbar/hbar' = 3/2
    p = solve_connection_params(1.5, 1.0, 0.5, 3, 2)
    xis = standard_test_functions()
    assert verify_structure(p, xis, inner=False).max_residual < 1e-9
    assert curvature_check(p, xis)["max_deviation"] < 1e-9


@given(st.floats(0.2, 2.0), st.floats(0.2, 2.0), st.floats(-1.5, 1.5), st.floats(-1.5, 1.5))
def test_display_family_is_a_bimodule(h, hp, eps, epsp):
    if abs(eps - epsp) < 0.1:
        return
    p = bimodule_params_from_display(h, hp, eps, epsp)
    assert verify_structure(p, standard_test_functions()[:1], inner=False).max_residual < 1e-9


def test_opposite_right_sign_breaks_right_relations():
    p = bimodule_params_from_display(0.7, 1.3, 0.4, -0.9, right_sign=-1)
    sec = verify_structure(p, standard_test_functions(), inner=False).by_section()
    assert sec["left_relations"] < 1e-9 and sec["mixed"] < 1e-9
    assert sec["right_relations"] > 1e-3


def test_perturbed_lambda1_breaks_left_relations():
    good = bimodule_params_from_display(1.0, 1.0, 0.5, -0.5)
    bad_left = LeftParams(good.left.lambda0, good.left.lambda1 + 0.1, good.left.eps, good.left.r,
                          good.left.hbar, check=False)
    p = BimoduleParams(bad_left, good.right, check=False)
    assert verify_structure(p, standard_test_functions(), inner=False).by_section()["left_relations"] > 1e-3


def test_constraints_are_enforced():
    with pytest.raises(ConstraintViolation):
        LeftParams(1.0, 1.0, 1.0, 1, 1.0)
    with pytest.raises(ConstraintViolation):
        RightParams(1.0, 1.0, 1.0, 1, 1.0, sign=-1)
    left = LeftParams(-1.0, 0.0, 1.0, 1, 1.0)
    right = RightParams(1.0, 0.0, 1.0, 1, 1.0)
    with pytest.raises(ConstraintViolation):
        BimoduleParams(left, right)


def test_degenerate_contracts():
    with pytest.raises(EqualPlanck):
        solve_connection_params(1.0, 1.0, 1.0, 1, 2)
    with pytest.raises(IncompatibleRatio):
        solve_connection_params(1.0, math.sqrt(2), 1.0, 1, 2)
    with pytest.raises(DegenerateParams):
        solve_connection_params(0.0, 0.0, 1.0, 1, 2)
    with pytest.raises(DegenerateParams):
        solve_connection_params(1.0, 2.0, 0.0, 1, 2)
    with pytest.raises(DegenerateParams):
        bimodule_params_from_display(1.0, 2.0, 0.5, 0.5)


def test_single_sided_curvature_is_alpha_beta():
    p = bimodule_params_from_display(1.0, 1.0, 0.5, -0.5)
    xi = standard_test_functions()[0]
    samples = measured_curvature(p, xi)
    alpha, beta = 1 / p.left.lambda0, 1j / p.left.eps
    assert np.allclose(samples, alpha * beta, atol=1e-10)


def test_connection_finite_difference_spot_check():
    p = solve_connection_params(1.0, 2.0, 1.0, 1, 2)
    xi = standard_test_functions()[1]
    nu, nv = connection(p, xi)
    h = 1e-6
    for k in xi.support:
        fd = (xi(XS + h, k) - xi(XS - h, k)) / (2 * h)
        assert np.allclose(nu(XS, k), fd / p.left.lambda0, atol=1e-6)
        assert np.allclose(nv(XS, k), 1j / p.left.eps * XS * xi(XS, k))


def test_inner_product_is_hermitian_and_shift_invariant():
    xi, eta = standard_test_functions()[:2]
    assert inner_product(xi, eta) == pytest.approx(np.conj(inner_product(eta, xi)), abs=1e-12)
    assert inner_product(xi, xi).real > 0
    p = solve_connection_params(1.0, 2.0, 1.0, 1, 2)
    wxi = act_left(Letter.W, p.left, xi)
    assert inner_product(wxi, wxi) == pytest.approx(inner_product(xi, xi), abs=1e-11)


def test_grid_residual_normalization():
    xi = TestFunction.gaussian(0)
    assert grid_residual(xi, xi) == 0
    assert grid_residual(xi, xi.scale(2.0)) == pytest.approx(0.5)
