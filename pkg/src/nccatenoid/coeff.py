"""Exact coefficients: Gaussian rationals, polynomial in ``hbar``, Laurent in ``q``.

``q`` stands for ``exp(hbar/2)`` but the two symbols are kept formally
independent; the relation is only used by :meth:`Scalar.evaluate`.
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterator, Tuple, Union


_FZERO = Fraction(0)
_FONE = Fraction(1)


class GaussianRational:
    """An element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Rational)):
            return cls(x, 0)
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        if isinstance(x, float):
            return cls(Fraction(x), 0)
        raise TypeError(f"cannot coerce {x!r} to GaussianRational")

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        g = cls.__new__(cls)
        g.re, g.im = re, im
        return g

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        if not self.im and not other.im:
            return GaussianRational._make(self.re * other.re, _FZERO)
        return GaussianRational._make(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return _imag_str(self.im)
        sign = "-" if self.im < 0 else "+"
        return f"({self.re} {sign} {_imag_str(abs(self.im))})"


def _imag_str(im: Fraction) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{im}*i"


Key = Tuple[int, int]  # (hbar power, q power)
ScalarLike = Union["Scalar", GaussianRational, int, Fraction, complex]


class Scalar:
    """Finite sum of ``c * hbar^m * q^n`` with ``c`` in Q(i), ``m >= 0``.

    Zero coefficients are never stored, so equality is structural.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Key, GaussianRational] | None = None):
        self.terms: Dict[Key, GaussianRational] = {}
        if terms:
            for key, c in terms.items():
                c = GaussianRational.coerce(c)
                if c:
                    if key[0] < 0:
                        raise ValueError("negative power of hbar")
                    self.terms[key] = c

    @classmethod
    def _raw(cls, terms: Dict[Key, GaussianRational]) -> "Scalar":
        s = cls.__new__(cls)
        s.terms = terms
        return s

    @classmethod
    def coerce(cls, x: ScalarLike) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        c = GaussianRational.coerce(x)
        return cls._raw({(0, 0): c} if c else {})

    @classmethod
    def monomial(cls, c=1, hpow: int = 0, qpow: int = 0) -> "Scalar":
        return cls({(hpow, qpow): GaussianRational.coerce(c)})

    @classmethod
    def hbar(cls, power: int = 1) -> "Scalar":
        return cls.monomial(1, power, 0)

    @classmethod
    def q(cls, power: int = 1) -> "Scalar":
        return cls.monomial(1, 0, power)

    @classmethod
    def i(cls) -> "Scalar":
        return cls.coerce(GaussianRational(0, 1))

    def items(self) -> Iterator[Tuple[Key, GaussianRational]]:
        return iter(self.terms.items())

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        other = Scalar.coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key)
            if s is None:
                out[key] = c
            else:
                s = s + c
                if s:
                    out[key] = s
                else:
                    del out[key]
        return Scalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Scalar.coerce(other))

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        other = Scalar.coerce(other)
        if not self.terms or not other.terms:
            return Scalar._raw({})
        if len(other.terms) == 1:
            ((h2, q2), c2), = other.terms.items()
            if c2.re == _FONE and not c2.im:
                # multiplying by hbar^h2 q^q2 only shifts the keys
                return Scalar._raw({(h + h2, n + q2): c for (h, n), c in self.terms.items()})
        out: Dict[Key, GaussianRational] = {}
        for (h1, q1), c1 in self.terms.items():
            for (h2, q2), c2 in other.terms.items():
                key = (h1 + h2, q1 + q2)
                c = c1 * c2
                s = out.get(key)
                out[key] = c if s is None else s + c
        return Scalar._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = Scalar.coerce(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_unit(self) -> bool:
        """True for ``c * q^n`` with ``c != 0``: the invertible scalars."""
        if len(self.terms) != 1:
            return False
        (h, _), = self.terms
        return h == 0

    def inverse(self) -> "Scalar":
        if not self.is_unit():
            raise ZeroDivisionError(f"scalar {self} is not invertible")
        ((_, n), c), = self.terms.items()
        return Scalar._raw({(0, -n): c.inverse()})

    def conj(self) -> "Scalar":
        return Scalar._raw({k: c.conj() for k, c in self.terms.items()})

    def is_real(self) -> bool:
        return all(c.im == 0 for c in self.terms.values())

    def is_positive(self) -> bool:
        """Sufficient test for ``evaluate(hbar) > 0`` at every real hbar.

        Requires real positive coefficients, even hbar powers, and a
        nonzero hbar-free part.
        """
        if not self.terms:
            return False
        has_const = False
        for (h, _), c in self.terms.items():
            if c.im != 0 or c.re <= 0 or h % 2:
                return False
            has_const = has_const or h == 0
        return has_const

    def hbar_free(self) -> bool:
        return all(h == 0 for h, _ in self.terms)

    def evaluate(self, hbar: float) -> complex:
        total = 0j
        for (h, n), c in self.terms.items():
            total += complex(c) * (hbar ** h) * cmath.exp(n * hbar / 2)
        return total

    def __eq__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        return format_scalar(self)


def scalar_mul(a: ScalarLike, b: ScalarLike) -> Scalar:
    return Scalar.coerce(a) * Scalar.coerce(b)


def scalar_conj(a: ScalarLike) -> Scalar:
    return Scalar.coerce(a).conj()


def scalar_eval(a: ScalarLike, hbar: float) -> complex:
    return Scalar.coerce(a).evaluate(hbar)


def _term_factors(h: int, n: int) -> list:
    parts = []
    if h == 1:
        parts.append("hbar")
    elif h:
        parts.append(f"hbar^{h}")
    if n == 1:
        parts.append("q")
    elif n:
        parts.append(f"q^{n}")
    return parts


def _split_sign(c: GaussianRational) -> Tuple[bool, GaussianRational]:
    """Pull an overall minus sign out of a real or purely imaginary number."""
    if c.im == 0 and c.re < 0:
        return True, -c
    if c.re == 0 and c.im < 0:
        return True, -c
    return False, c


def _coeff_str(c: GaussianRational, with_unit: bool) -> str:
    if c.im == 0:
        if c.re == 1 and not with_unit:
            return ""
        return str(c.re)
    if c.re == 0:
        return "i" if c.im == 1 else f"{c.im}*i"
    sign = "-" if c.im < 0 else "+"
    im = abs(c.im)
    return f"({c.re} {sign} {'i' if im == 1 else f'{im}*i'})"


def format_term(c: GaussianRational, h: int, n: int) -> Tuple[bool, str]:
    """Render ``c*hbar^h*q^n`` as (negative?, body) with the sign pulled out."""
    neg, c = _split_sign(c)
    factors = _term_factors(h, n)
    head = _coeff_str(c, with_unit=not factors)
    body = "*".join([head] + factors if head else factors)
    return neg, body


def _scalar_order(key: Key):
    h, n = key
    return (-h, -n)


def format_scalar(s: Scalar) -> str:
    if not s.terms:
        return "0"
    out = ""
    for i, key in enumerate(sorted(s.terms, key=_scalar_order)):
        neg, body = format_term(s.terms[key], *key)
        if i == 0:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out


ZERO = Scalar()
ONE = Scalar.coerce(1)
I = Scalar.i()
HBAR = Scalar.hbar()
