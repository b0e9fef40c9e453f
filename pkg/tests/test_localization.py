import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nccatenoid.coeff import Scalar
from nccatenoid.errors import DenominatorTooSmall, NotCertifiedPositive, NotInvertible
from nccatenoid.localization import (
    CommPoly,
    LocalElement,
    PositiveCert,
    RationalFn,
    certify,
    generator,
    loc_derive,
    loc_inv,
    loc_mul,
    phi_eval,
    rat_inv,
    sigma_shift,
)
from nccatenoid.nfalg import nf_derive, nf_mul, nf_star
from strategies import alg_elements, rand_local, rand_positive_poly

U_P, R_P = CommPoly.mono(1, 0), CommPoly.mono(0, 1)
ONE_P = CommPoly.const(1)


def rand_poly(rng):
    return CommPoly({(rng.randint(0, 3), rng.randint(-2, 2)): Scalar.monomial(
        rng.randint(-3, 3), rng.randint(0, 1), rng.randint(-2, 2)) for _ in range(3)})


def test_sigma_is_automorphism_and_action():
    rng = random.Random(3)
    for _ in range(100):
        p, q = rand_poly(rng), rand_poly(rng)
        k, l = rng.randint(-3, 3), rng.randint(-3, 3)
        assert (p * q).sigma(k) == p.sigma(k) * q.sigma(k)
        assert (p + q).sigma(k) == p.sigma(k) + q.sigma(k)
        assert p.sigma(k).sigma(l) == p.sigma(k + l)


def test_sigma_matches_shifted_image():
    # phi(sigma_k p)(u) = phi(p)(u + k hbar), an independent numeric check
    rng = random.Random(4)
    u = np.linspace(-3, 3, 13)
    for _ in range(50):
        p, k, h = rand_poly(rng), rng.randint(-2, 2), rng.uniform(-1.5, 1.5)
        lhs = phi_eval(RationalFn(p.sigma(k)), u, h)
        rhs = phi_eval(RationalFn(p), u + k * h, h)
        assert np.allclose(lhs, rhs, rtol=1e-11, atol=1e-11)


def test_phi_of_generators():
    assert phi_eval(RationalFn(R_P + U_P), 1.0, 0.3) == pytest.approx(np.e + 1)
    # q^2 = e^hbar
    assert phi_eval(RationalFn(CommPoly.const(Scalar.q(2))), 0.0, 0.7) == pytest.approx(np.exp(0.7))


@given(alg_elements, alg_elements)
def test_embedding_is_homomorphism(a, b):
    ea, eb = LocalElement.embed(a), LocalElement.embed(b)
    assert loc_mul(ea, eb) == LocalElement.embed(nf_mul(a, b))
    assert ea.star() == LocalElement.embed(nf_star(a))
    for op in ("du", "dv", "d", "dbar"):
        assert loc_derive(op, ea) == LocalElement.embed(nf_derive(op, a))
    assert LocalElement.embed(a).to_alg() == a


def test_localized_ring_laws():
    # single-term factors keep denominators small (no polynomial gcd is taken)
    rng = random.Random(5)
    for _ in range(40):
        x, y, z = rand_local(rng, 1), rand_local(rng, 1), rand_local(rng, 1)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert (x * y).star() == y.star() * x.star()
        assert x.star().star() == x
        for op in ("du", "dv"):
            assert loc_derive(op, x * y) == loc_derive(op, x) * y + x * loc_derive(op, y)
            assert loc_derive(op, x.star()) == loc_derive(op, x).star()


def test_inverses():
    rng = random.Random(6)
    one = LocalElement.scalar(1)
    for _ in range(30):
        f = RationalFn(rand_positive_poly(rng)) * rat_inv(RationalFn(rand_positive_poly(rng)))
        x = LocalElement.from_rational(f, rng.randint(-2, 2))
        xi = loc_inv(x)
        assert x * xi == one and xi * x == one


def test_w_commutes_past_functions_by_shift():
    W = generator("W")
    f = LocalElement.from_rational(rat_inv(RationalFn(ONE_P + U_P * U_P)))
    lhs = W * f
    rhs = LocalElement.from_rational(sigma_shift(f.k0(), 1)) * W
    assert lhs == rhs


def test_inverse_of_sums_rejected():
    with pytest.raises(NotInvertible):
        loc_inv(generator("W") + generator("R"))


def test_certificates():
    assert certify(ONE_P + U_P * U_P).kind == "sum-of-nonnegative"
    assert certify(U_P * U_P + U_P.scale(2) + CommPoly.const(3)).kind == "shifted-square-plus-positive"
    assert certify(R_P * R_P + ONE_P).kind == "sum-of-nonnegative"
    assert certify(R_P).kind == "power-of-R"
    assert not certify(-(ONE_P + R_P)).heuristic
    # (U + hbar)^2 + 1 = sigma_1(U^2 + 1)
    shifted = (ONE_P + U_P * U_P).sigma(1)
    assert certify(shifted).kind in ("sigma-shift", "shifted-square-plus-positive")
    assert certify(R_P.scale(Scalar.q(3))).kind == "power-of-R"


def test_numeric_certificate_is_flagged():
    p = ONE_P + U_P * U_P * U_P * U_P + U_P  # u^4 + u + 1 > 0
    cert = certify(p)
    assert cert.heuristic and cert.kind == "numeric-sampled"
    with pytest.raises(NotCertifiedPositive):
        certify(p, allow_numeric=False)


@pytest.mark.parametrize("p", [U_P, R_P - ONE_P, U_P * U_P - ONE_P, CommPoly()])
def test_vanishing_elements_not_certified(p):
    with pytest.raises(NotCertifiedPositive):
        certify(p)


def test_denominator_guard():
    bogus = RationalFn(ONE_P, U_P, PositiveCert("constant"))
    with pytest.raises(DenominatorTooSmall):
        phi_eval(bogus, np.array([0.0, 1.0]), 1.0)


@given(st.floats(-400, 400))
def test_large_arguments_stay_finite(u):
    f = RationalFn(R_P * R_P) * rat_inv(RationalFn(ONE_P + R_P * R_P))
    v = phi_eval(f, u, 1.0)
    assert np.isfinite(v) and -1e-12 <= v.real <= 1 + 1e-12
