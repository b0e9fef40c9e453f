import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nccatenoid.errors import NonIntegrable
from nccatenoid.geometry import catenoid_conformal_factor
from nccatenoid.integration import (
    QuadratureConfig,
    adaptive_simpson,
    integrate_line,
    non_trace_witness,
    tau0,
    tau_h,
    total_curvature,
)
from nccatenoid.parser import parse_local


def test_adaptive_simpson_polynomial_and_oscillatory():
    val, err = adaptive_simpson(lambda x: x ** 3 - x, 0.0, 2.0, 1e-12)
    assert val == pytest.approx(2.0, abs=1e-12)
    val, _ = adaptive_simpson(np.sin, 0.0, np.pi, 1e-11)
    assert val == pytest.approx(2.0, abs=1e-10)


def test_gaussian_line_integral():
    res = integrate_line(lambda u: np.exp(-u * u))
    assert res.value.real == pytest.approx(np.sqrt(np.pi), abs=1e-9)
    assert res.halfwidth <= 20


def test_algebraic_decay_uses_tails():
    res = integrate_line(lambda u: 1 / (1 + u * u))
    assert res.value.real == pytest.approx(np.pi, abs=1e-8)
    assert abs(res.tail) > 0.01


def test_tau0_examples():
    # 2 pi * integral sech^2 = 4 pi
    sech2 = parse_local("4*R^2*inv(R^4 + 2*R^2 + 1)")
    assert tau0(sech2, 0.7).real == pytest.approx(4 * np.pi, abs=1e-7)
    assert tau0(parse_local("inv(1 + U^2)^2"), 1.0).real == pytest.approx(np.pi ** 2, abs=1e-7)


def test_tau0_ignores_w_terms():
    a = parse_local("inv(1 + U^2) + U*W^2 - W^-1")
    assert tau0(a, 1.0).value == pytest.approx(tau0(parse_local("inv(1 + U^2)"), 1.0).value)


@given(st.fractions(-3, 3, max_denominator=4), st.fractions(-3, 3, max_denominator=4))
def test_linearity(c1, c2):
    a, b = parse_local("inv(1 + U^2)"), parse_local("R^2*inv(1 + R^2)^2")
    lhs = tau0(a.scale(c1) + b.scale(c2), 0.5).value
    rhs = c1 * tau0(a, 0.5).value + c2 * tau0(b, 0.5).value
    assert lhs == pytest.approx(rhs, abs=1e-7)


def test_tau_h_with_unit_factor_is_twice_tau0():
    a = parse_local("inv(1 + U^2)")
    one = parse_local("1")
    assert tau_h(a, one, 1.0).value == pytest.approx(2 * tau0(a, 1.0).value, abs=1e-8)


@pytest.mark.parametrize("scale", [1, 3, 1 / 7])
def test_total_curvature_scale_invariant(scale):
    S = catenoid_conformal_factor().scale(scale)
    assert total_curvature(S, 0.3) == pytest.approx(-4 * np.pi, abs=1e-6)


def test_non_integrable():
    with pytest.raises(NonIntegrable):
        tau0(parse_local("R"), 1.0)
    with pytest.raises(NonIntegrable):
        tau0(parse_local("U^2*inv(1 + U^2)"), 1.0)


def test_zero_integrand():
    assert tau0(parse_local("0"), 1.0).value == 0


def test_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(abs_tol=0)
    with pytest.raises(ValueError):
        QuadratureConfig(initial_halfwidth=200, max_halfwidth=100)


@pytest.mark.parametrize("hbar", [0.25, 1.0, 2.0])
def test_non_trace_witness(hbar):
    a, b = non_trace_witness()
    ab, ba = tau0(a * b, hbar).real, tau0(b * a, hbar).real
    # W^0 part of ab is f(u + hbar) - f(u - hbar) with f a logistic curve
    assert ab == pytest.approx(4 * np.pi * hbar, abs=1e-6)
    assert ba == pytest.approx(0.0, abs=1e-9)
