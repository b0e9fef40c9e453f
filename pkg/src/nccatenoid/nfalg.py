"""The catenoid algebra in the basis ``U^a R^j W^k``.

Products use the closed forms ``W^k U^b = (U + k hbar)^b W^k`` and
``W^k R^l = q^(2kl) R^l W^k``.
"""
from __future__ import annotations

from enum import Enum
from fractions import Fraction
from math import comb
from typing import Dict, Iterator, Tuple

from .coeff import I, ONE, Scalar, ScalarLike
from .freealg import FreeElement, Letter, Word

Monomial = Tuple[int, int, int]  # (alpha, j, k)


class DerivationLabel(str, Enum):
    du = "du"
    dv = "dv"
    d = "d"
    dbar = "dbar"


HALF = Fraction(1, 2)


class AlgElement:
    """Element of the algebra as ``{(alpha, j, k): Scalar}``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Monomial, ScalarLike] | None = None):
        self.terms: Dict[Monomial, Scalar] = {}
        for m, c in (terms or {}).items():
            c = Scalar.coerce(c)
            if c:
                if m[0] < 0:
                    raise ValueError("negative power of U")
                self.terms[(int(m[0]), int(m[1]), int(m[2]))] = c

    @classmethod
    def _clean(cls, terms: Dict[Monomial, Scalar]) -> "AlgElement":
        e = cls.__new__(cls)
        e.terms = {m: c for m, c in terms.items() if c}
        return e

    @classmethod
    def mono(cls, alpha: int = 0, j: int = 0, k: int = 0, coeff: ScalarLike = 1) -> "AlgElement":
        return cls({(alpha, j, k): coeff})

    @classmethod
    def scalar(cls, c: ScalarLike) -> "AlgElement":
        return cls({(0, 0, 0): c})

    def items(self) -> Iterator[Tuple[Monomial, Scalar]]:
        return iter(self.terms.items())

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(out, m, c)
        return AlgElement._clean(out)

    __radd__ = __add__

    def __neg__(self):
        return AlgElement._clean({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def scale(self, c: ScalarLike) -> "AlgElement":
        c = Scalar.coerce(c)
        return AlgElement._clean({m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgElement):
            return nf_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers need the localization")
        out = AlgElement.scalar(1)
        for _ in range(n):
            out = nf_mul(out, self)
        return out

    def __eq__(self, other):
        if isinstance(other, AlgElement):
            return self.terms == other.terms
        try:
            return self.terms == _coerce(other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def leading(self) -> Tuple[Monomial, Scalar]:
        """Largest monomial in (alpha, j, k) order and its coefficient."""
        m = max(self.terms)
        return m, self.terms[m]

    def star(self) -> "AlgElement":
        return nf_star(self)

    def __repr__(self):
        return f"AlgElement({self})"

    def __str__(self):
        from .printing import format_alg

        return format_alg(self)


def _coerce(x) -> AlgElement:
    if isinstance(x, AlgElement):
        return x
    return AlgElement.scalar(Scalar.coerce(x))


def _acc(out: Dict[Monomial, Scalar], m: Monomial, c: Scalar) -> None:
    s = out.get(m)
    if s is None:
        out[m] = c
    else:
        s = s + c
        if s:
            out[m] = s
        else:
            del out[m]


def _mono_product(a: Monomial, b: Monomial) -> Dict[Monomial, Scalar]:
    alpha, j, k = a
    beta, l, m = b
    qpow = 2 * k * l
    out = {}
    for t in range(beta + 1):
        c = comb(beta, t) * k ** t
        if c:
            out[(alpha + beta - t, j + l, k + m)] = Scalar.monomial(c, t, qpow)
    return out


def nf_mul(a: AlgElement, b: AlgElement) -> AlgElement:
    out: Dict[Monomial, Scalar] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            cab = ca * cb
            for m, c in _mono_product(ma, mb).items():
                _acc(out, m, cab * c)
    return AlgElement._clean(out)


def nf_star(a: AlgElement) -> AlgElement:
    """Antilinear anti-automorphism with U* = U, R* = R, W* = W^-1."""
    out: Dict[Monomial, Scalar] = {}
    for (alpha, j, k), c in a.terms.items():
        # (U^a R^j W^k)* = W^-k R^j U^a
        first = _mono_product((0, 0, -k), (0, j, 0))
        cc = c.conj()
        for m1, c1 in first.items():
            for m2, c2 in _mono_product(m1, (alpha, 0, 0)).items():
                _acc(out, m2, cc * c1 * c2)
    return AlgElement._clean(out)


def _du(a: AlgElement) -> AlgElement:
    out: Dict[Monomial, Scalar] = {}
    for (alpha, j, k), c in a.terms.items():
        if alpha:
            _acc(out, (alpha - 1, j, k), c * alpha)
        if j:
            _acc(out, (alpha, j, k), c * j)
    return AlgElement._clean(out)


def _dv(a: AlgElement) -> AlgElement:
    return AlgElement._clean({m: c * I * m[2] for m, c in a.terms.items() if m[2]})


def nf_derive(label, a: AlgElement) -> AlgElement:
    label = DerivationLabel(label)
    if label is DerivationLabel.du:
        return _du(a)
    if label is DerivationLabel.dv:
        return _dv(a)
    du, dv = _du(a), _dv(a)
    if label is DerivationLabel.d:
        return (du - dv.scale(I)).scale(HALF)
    return (du + dv.scale(I)).scale(HALF)


def monomial_word(m: Monomial) -> Word:
    alpha, j, k = m
    r = Letter.R if j >= 0 else Letter.Rinv
    w = Letter.W if k >= 0 else Letter.Winv
    return (Letter.U,) * alpha + (r,) * abs(j) + (w,) * abs(k)


def to_free(a: AlgElement) -> FreeElement:
    return FreeElement({monomial_word(m): c for m, c in a.terms.items()})


def word_monomial(w: Word) -> Monomial:
    """Inverse of :func:`monomial_word` on irreducible words."""
    alpha = j = k = 0
    stage = 0
    for x in w:
        if x is Letter.U:
            if stage > 0:
                raise ValueError(f"word {w} is not in normal form")
            alpha += 1
        elif x in (Letter.R, Letter.Rinv):
            if stage > 1 or (j and (x is Letter.R) != (j > 0)):
                raise ValueError(f"word {w} is not in normal form")
            stage = 1
            j += 1 if x is Letter.R else -1
        else:
            if k and (x is Letter.W) != (k > 0):
                raise ValueError(f"word {w} is not in normal form")
            stage = 2
            k += 1 if x is Letter.W else -1
    return (alpha, j, k)


def from_free_normal(x: FreeElement) -> AlgElement:
    out: Dict[Monomial, Scalar] = {}
    for w, c in x.terms.items():
        _acc(out, word_monomial(w), c)
    return AlgElement._clean(out)


# generators
ONE_A = AlgElement.scalar(ONE)
U_A = AlgElement.mono(1, 0, 0)
R_A = AlgElement.mono(0, 1, 0)
RINV_A = AlgElement.mono(0, -1, 0)
W_A = AlgElement.mono(0, 0, 1)
WINV_A = AlgElement.mono(0, 0, -1)

GENERATORS = {
    Letter.U: U_A,
    Letter.R: R_A,
    Letter.Rinv: RINV_A,
    Letter.W: W_A,
    Letter.Winv: WINV_A,
}
