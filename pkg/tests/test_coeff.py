import cmath
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nccatenoid.coeff import HBAR, I, ONE, ZERO, GaussianRational, Scalar, format_scalar
from nccatenoid.parser import parse_local
from strategies import gaussians, scalars


@given(gaussians, gaussians, gaussians)
def test_gaussian_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if a:
        assert a * a.inverse() == GaussianRational(1)


def test_gaussian_i_squared():
    i = GaussianRational(0, 1)
    assert i * i == GaussianRational(-1)
    assert i.conj() == GaussianRational(0, -1)


@given(scalars, scalars, scalars)
def test_scalar_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a and a * ONE == a
    assert a - a == ZERO


@given(scalars, scalars)
def test_conj_is_ring_automorphism(a, b):
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a + b).conj() == a.conj() + b.conj()
    assert a.conj().conj() == a


def _close(x: complex, y: complex, rel: float = 1e-12) -> bool:
    return abs(x - y) <= rel * max(1.0, abs(x), abs(y))


@given(scalars, scalars, st.floats(-2, 2))
def test_evaluation_is_homomorphism(a, b, h):
    assert _close((a * b).evaluate(h), a.evaluate(h) * b.evaluate(h))
    assert _close((a + b).evaluate(h), a.evaluate(h) + b.evaluate(h))
    assert _close(a.conj().evaluate(h), a.evaluate(h).conjugate())


def test_q_is_exp_half_hbar():
    for h in (-1.5, 0.0, 0.3, 2.0):
        assert _close(Scalar.q(2).evaluate(h), cmath.exp(h))
        assert _close((HBAR * HBAR).evaluate(h), h * h)


def test_hbar_and_q_are_independent():
    # q^2 is not identified with 1 + hbar + ... at the formal level
    assert Scalar.q(2) != ONE + HBAR
    assert Scalar.q(1) * Scalar.q(-1) == ONE


def test_units():
    u = Scalar.monomial(Fraction(3, 2), 0, 4) * I
    assert u.is_unit()
    assert u * u.inverse() == ONE
    assert not (ONE + HBAR).is_unit()
    with pytest.raises(ZeroDivisionError):
        HBAR.inverse()
    with pytest.raises(ValueError):
        Scalar({(-1, 0): 1})


def test_is_positive_is_sufficient():
    s = Scalar({(0, 2): 1, (2, -2): Fraction(1, 3)})
    assert s.is_positive()
    for h in (-3, -1, 0, 0.5, 4):
        assert s.evaluate(h).real > 0
    assert not Scalar({(1, 0): 1, (0, 0): 1}).is_positive()
    assert not I.is_positive()


@given(scalars)
def test_text_round_trip(s):
    back = parse_local(format_scalar(s))
    assert back.k0().num.terms.get((0, 0), ZERO) == s


def test_format_examples():
    assert format_scalar(Scalar({(1, 2): -1})) == "-hbar*q^2"
    assert format_scalar(Scalar({(0, 0): Fraction(1, 2), (1, 0): 1})) == "hbar + 1/2"
    assert format_scalar(ZERO) == "0"
