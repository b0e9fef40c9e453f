import random

import pytest
from hypothesis import given

from nccatenoid.coeff import Scalar
from nccatenoid.errors import NotCertifiedPositive, NotInvertible, ParseError, UnknownSymbol
from nccatenoid.freealg import normalize
from nccatenoid.nfalg import R_A, U_A, W_A, AlgElement, from_free_normal
from nccatenoid.parser import BinOp, Inv, Neg, Num, Pow, Sym, parse_expr, parse_free, parse_local
from strategies import alg_elements, rand_local


def test_tree_shapes():
    assert parse_expr("W*U") == BinOp("*", Sym("W"), Sym("U"))
    assert parse_expr("W U") == parse_expr("W*U")
    assert parse_expr("-U^2") == Neg(Pow(Sym("U"), 2))
    assert parse_expr("R^-1") == Pow(Sym("R"), -1)
    assert parse_expr("1/2*hbar") == BinOp("*", Num(parse_expr("1/2").value), Sym("hbar"))
    assert parse_expr("inv(U)") == Inv(Sym("U"))
    # + is left-associative, * binds tighter
    assert parse_expr("U + R*W - 1") == BinOp("-", BinOp("+", Sym("U"), BinOp("*", Sym("R"), Sym("W"))), Num(1))


def test_elaboration_examples():
    assert parse_local("W*U").to_alg() == U_A * W_A + W_A.scale(Scalar.hbar())
    assert parse_local("q^2*R*W^-2").to_alg() == AlgElement.mono(0, 1, -2, Scalar.q(2))
    assert parse_local("2U").to_alg() == U_A.scale(2)
    assert parse_local("(U + R)^2").to_alg() == (U_A + R_A) * (U_A + R_A)


def test_free_elaboration_keeps_word_order():
    x = parse_free("W*U")
    assert from_free_normal(normalize(x)) == U_A * W_A + W_A.scale(Scalar.hbar())
    with pytest.raises(NotInvertible):
        parse_free("inv(1 + U^2)")
    with pytest.raises(NotInvertible):
        parse_free("U^-1")


@pytest.mark.parametrize("text,offset", [("U +", 3), ("(U", 2), ("U ^ x", 4), ("U $ R", 2), ("1/0", 0),
                                         ("", 0), ("U)", 1), ("inv U", 4)])
def test_syntax_errors_report_offset(text, offset):
    with pytest.raises(ParseError) as exc:
        parse_expr(text)
    assert exc.value.position == offset


def test_unknown_symbol():
    with pytest.raises(UnknownSymbol) as exc:
        parse_expr("U + V")
    assert exc.value.position == 4


def test_inverse_of_non_units():
    with pytest.raises(NotCertifiedPositive):
        parse_local("hbar^-1")
    assert parse_local("inv(2 + q^2)") * parse_local("2 + q^2") == parse_local("1")
    assert parse_local("q^-3 * q^3").to_alg() == AlgElement.scalar(1)
    assert parse_local("inv(2*i)") == parse_local("-1/2*i")


@given(alg_elements)
def test_round_trip_normal_forms(a):
    from nccatenoid.printing import format_alg

    text = format_alg(a)
    assert parse_local(text).to_alg() == a
    assert format_alg(parse_local(text).to_alg()) == text


def test_round_trip_localized():
    rng = random.Random(21)
    for _ in range(100):
        x = rand_local(rng)
        text = str(x)
        back = parse_local(text)
        assert back == x
        assert str(back) == text
