"""Localization at nowhere-vanishing commutative elements.

Elements are finite sums ``sum_k a_k W^k`` where each ``a_k`` is a
rational function of the commuting pair (U, R) whose denominator carries a
:class:`PositiveCert`. Moving ``W^k`` past a function of (U, R) applies the
shift ``U -> U + k*hbar``, ``R -> q^(2k) R``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Optional, Tuple

import numpy as np

from .coeff import I, ONE, Scalar, ScalarLike
from .errors import DenominatorTooSmall, NotCertifiedPositive, NotInvertible
from .nfalg import AlgElement, DerivationLabel

PolyKey = Tuple[int, int]  # (U power, R power)
HALF = Fraction(1, 2)


def _acc(out, key, c):
    s = out.get(key)
    if s is None:
        out[key] = c
    else:
        s = s + c
        if s:
            out[key] = s
        else:
            del out[key]


class CommPoly:
    """Commutative polynomial in U (nonnegative powers) and R (Laurent)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[PolyKey, ScalarLike] | None = None):
        self.terms: Dict[PolyKey, Scalar] = {}
        for (a, j), c in (terms or {}).items():
            c = Scalar.coerce(c)
            if c:
                if a < 0:
                    raise ValueError("negative power of U")
                self.terms[(int(a), int(j))] = c

    @classmethod
    def _clean(cls, terms) -> "CommPoly":
        p = cls.__new__(cls)
        p.terms = {k: c for k, c in terms.items() if c}
        return p

    @classmethod
    def const(cls, c: ScalarLike) -> "CommPoly":
        return cls({(0, 0): c})

    @classmethod
    def mono(cls, a: int = 0, j: int = 0, c: ScalarLike = 1) -> "CommPoly":
        return cls({(a, j): c})

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0, 0): ONE}

    def __add__(self, other: "CommPoly") -> "CommPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return CommPoly._clean(out)

    def __neg__(self):
        return CommPoly._clean({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: ScalarLike) -> "CommPoly":
        c = Scalar.coerce(c)
        return CommPoly._clean({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: "CommPoly") -> "CommPoly":
        if not isinstance(other, CommPoly):
            return self.scale(other)
        if other.is_one():
            return self
        if self.is_one():
            return other
        out: Dict[PolyKey, Scalar] = {}
        for (a1, j1), c1 in self.terms.items():
            for (a2, j2), c2 in other.terms.items():
                _acc(out, (a1 + a2, j1 + j2), c1 * c2)
        return CommPoly._clean(out)

    def __pow__(self, n: int) -> "CommPoly":
        out = CommPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, CommPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def conj(self) -> "CommPoly":
        return CommPoly._clean({k: c.conj() for k, c in self.terms.items()})

    def shift_r(self, m: int) -> "CommPoly":
        return CommPoly._clean({(a, j + m): c for (a, j), c in self.terms.items()})

    def min_r(self) -> int:
        return min(j for _, j in self.terms)

    def derive_u(self) -> "CommPoly":
        """``U -> 1``, ``R -> R`` extended as a derivation."""
        out: Dict[PolyKey, Scalar] = {}
        for (a, j), c in self.terms.items():
            if a:
                _acc(out, (a - 1, j), c * a)
            if j:
                _acc(out, (a, j), c * j)
        return CommPoly._clean(out)

    def sigma(self, k: int) -> "CommPoly":
        """Substitute ``U -> U + k*hbar``, ``R -> q^(2k) R``."""
        if k == 0:
            return self
        out: Dict[PolyKey, Scalar] = {}
        for (a, j), c in self.terms.items():
            for t in range(a + 1):
                coef = comb(a, t) * k ** t
                _acc(out, (a - t, j), c * Scalar.monomial(coef, t, 2 * k * j))
        return CommPoly._clean(out)

    def phi_scaled(self, u, hbar: float):
        """Return ``(mantissa, exponent)`` with ``phi(p)(u) = mantissa * exp(exponent)``.

        Evaluating in this split form keeps large ``|u|`` finite.
        """
        u = np.asarray(u, dtype=float)
        if not self.terms:
            return np.zeros_like(u, dtype=complex), np.zeros_like(u)
        keys = list(self.terms)
        coeffs = [self.terms[k].evaluate(hbar) for k in keys]
        expo = np.max([j * u for _, j in keys], axis=0)
        mant = np.zeros_like(u, dtype=complex)
        for (a, j), c in zip(keys, coeffs):
            mant = mant + c * u ** a * np.exp(j * u - expo)
        return mant, expo

    def phi_magnitude_scaled(self, u, hbar: float, expo):
        u = np.asarray(u, dtype=float)
        mag = np.zeros_like(u)
        for (a, j), c in self.terms.items():
            mag = mag + abs(c.evaluate(hbar)) * np.abs(u) ** a * np.exp(j * u - expo)
        return mag

    def to_alg(self, k: int = 0) -> AlgElement:
        return AlgElement({(a, j, k): c for (a, j), c in self.terms.items()})

    def __repr__(self):
        return f"CommPoly({self})"

    def __str__(self):
        from .printing import format_poly

        return format_poly(self)


# --------------------------------------------------------------------------
# positivity certificates


@dataclass(frozen=True)
class PositiveCert:
    """Evidence that ``phi(p)(u)`` never vanishes for real u and real hbar.

    ``kind`` is one of constant, power-of-R, sum-of-nonnegative,
    shifted-square-plus-positive, product, sigma-shift, conjugate,
    numeric-sampled. Only numeric-sampled is heuristic.
    """

    kind: str
    children: Tuple["PositiveCert", ...] = ()
    shift: int = 0
    detail: str = ""

    @property
    def heuristic(self) -> bool:
        return self.kind == "numeric-sampled" or any(c.heuristic for c in self.children)

    def describe(self) -> str:
        if not self.children:
            return self.kind + (f"[{self.detail}]" if self.detail else "")
        inner = ", ".join(c.describe() for c in self.children)
        extra = f"{self.shift}; " if self.kind == "sigma-shift" else ""
        return f"{self.kind}({extra}{inner})"


CONSTANT_CERT = PositiveCert("constant")


def cert_product(a: PositiveCert, b: PositiveCert) -> PositiveCert:
    if a.kind == "constant" and not a.detail:
        return b
    if b.kind == "constant" and not b.detail:
        return a
    return PositiveCert("product", (a, b))


def _nonnegative_term(a: int, c: Scalar) -> bool:
    return a % 2 == 0 and c.is_positive()


def _certify_closed(p: CommPoly) -> Optional[PositiveCert]:
    terms = p.terms
    if len(terms) == 1:
        ((a, j), c), = terms.items()
        if a == 0 and (c.is_unit() or c.is_positive()):
            return PositiveCert("constant") if j == 0 else PositiveCert("power-of-R", detail=str(j))
        return None
    if all(_nonnegative_term(a, c) for (a, _), c in terms.items()) and any(
        a == 0 for a, _ in terms
    ):
        return PositiveCert("sum-of-nonnegative")
    if set(terms) <= {(0, 0), (1, 0), (2, 0)} and (2, 0) in terms:
        a2 = terms[(2, 0)]
        a1 = terms.get((1, 0), Scalar())
        a0 = terms.get((0, 0), Scalar())
        disc = a2 * a0 * 4 - a1 * a1
        if a2.is_positive() and disc.is_positive():
            return PositiveCert("shifted-square-plus-positive")
    return None


def _certify_signed(p: CommPoly) -> Optional[PositiveCert]:
    c = _certify_closed(p)
    if c is not None:
        return c
    c = _certify_closed(-p)
    if c is not None:
        return PositiveCert("product", (PositiveCert("constant", detail="-1"), c))
    return None


NUMERIC_GRID = np.arange(-5000, 5001) / 100.0
NUMERIC_MARGIN = 1e-9
NUMERIC_HBARS = (-1.0, -0.5, 0.0, 0.5, 1.0)


def certify(p: CommPoly, allow_numeric: bool = True) -> PositiveCert:
    """Build a certificate that ``p`` is invertible in the localization.

    Tries the closed whitelist, then shifts ``sigma_k`` for |k| <= 3, then
    (if allowed) a sampled check flagged as heuristic.
    """
    if p.is_zero():
        raise NotCertifiedPositive("zero is not invertible")
    cert = _certify_signed(p)
    if cert is not None:
        return cert
    for k in (1, -1, 2, -2, 3, -3):
        inner = _certify_signed(p.sigma(-k))
        if inner is not None:
            return PositiveCert("sigma-shift", (inner,), shift=k)
    if allow_numeric and _numeric_nonvanishing(p):
        return PositiveCert(
            "numeric-sampled",
            detail=f"u in [-50,50] step 0.01, margin {NUMERIC_MARGIN:g}, hbar in {NUMERIC_HBARS}",
        )
    raise NotCertifiedPositive(f"cannot certify that phi({p}) never vanishes")


def _numeric_nonvanishing(p: CommPoly) -> bool:
    log_margin = np.log(NUMERIC_MARGIN)
    with np.errstate(all="ignore"):
        for hbar in NUMERIC_HBARS:
            mant, expo = p.phi_scaled(NUMERIC_GRID, hbar)
            logs = np.log(np.abs(mant)) + expo
            if not np.all(np.isfinite(logs)) or np.any(logs <= log_margin):
                return False
    return True


# --------------------------------------------------------------------------
# rational functions


class RationalFn:
    """``num / prod(F_i^e_i)`` with certified, canonical denominator factors.

    Keeping the denominator factored lets sums use the lcm of the factor
    lists and lets structurally equal factors cancel, which keeps iterated
    products and derivatives from squaring denominators.
    """

    __slots__ = ("num", "factors")

    def __init__(self, num: CommPoly, den: CommPoly | None = None, den_cert: PositiveCert | None = None):
        factors: Dict[CommPoly, Tuple[int, PositiveCert]] = {}
        if den is not None:
            if den.is_zero():
                raise ZeroDivisionError("zero denominator")
            if not den.is_one():
                factors[den] = (1, den_cert if den_cert is not None else certify(den))
        self.num, self.factors = _reduce(num, factors)

    @classmethod
    def _make(cls, num: CommPoly, factors: Dict[CommPoly, Tuple[int, PositiveCert]]) -> "RationalFn":
        f = cls.__new__(cls)
        f.num, f.factors = _reduce(num, factors)
        return f

    @classmethod
    def of(cls, p: CommPoly) -> "RationalFn":
        return cls(p)

    @classmethod
    def const(cls, c: ScalarLike) -> "RationalFn":
        return cls(CommPoly.const(c))

    @property
    def den(self) -> CommPoly:
        out = CommPoly.const(1)
        for F, (e, _) in self.factors.items():
            out = out * F ** e
        return out

    @property
    def den_cert(self) -> PositiveCert:
        cert = CONSTANT_CERT
        for _, (_, c) in sorted(self.factors.items(), key=lambda kv: _poly_key(kv[0])):
            cert = cert_product(cert, c)
        return cert

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return not self.factors

    def _over_lcm(self, other: "RationalFn"):
        """Numerators of self and other rewritten over the lcm of the denominators."""
        lcm = dict(self.factors)
        for F, (e, c) in other.factors.items():
            if F not in lcm or lcm[F][0] < e:
                lcm[F] = (e, c)
        a, b = self.num, other.num
        for F, (e, _) in lcm.items():
            ea = self.factors.get(F, (0, None))[0]
            eb = other.factors.get(F, (0, None))[0]
            if e > ea:
                a = a * F ** (e - ea)
            if e > eb:
                b = b * F ** (e - eb)
        return a, b, lcm

    def __add__(self, other: "RationalFn") -> "RationalFn":
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        a, b, lcm = self._over_lcm(other)
        return RationalFn._make(a + b, lcm)

    def __neg__(self):
        return RationalFn._make(-self.num, self.factors)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "RationalFn") -> "RationalFn":
        if not isinstance(other, RationalFn):
            return self.scale(other)
        factors = dict(self.factors)
        for F, (e, c) in other.factors.items():
            factors[F] = (factors[F][0] + e, c) if F in factors else (e, c)
        return RationalFn._make(self.num * other.num, factors)

    def scale(self, c: ScalarLike) -> "RationalFn":
        return RationalFn._make(self.num.scale(c), self.factors)

    def __eq__(self, other):
        if not isinstance(other, RationalFn):
            return NotImplemented
        a, b, _ = self._over_lcm(other)
        return a == b

    __hash__ = None

    def conj(self) -> "RationalFn":
        factors: Dict[CommPoly, Tuple[int, PositiveCert]] = {}
        num = self.num.conj()
        for F, (e, c) in self.factors.items():
            G = F.conj()
            cert = c if G == F else PositiveCert("conjugate", (c,))
            num = _put_factor(factors, G, e, cert, num)
        return RationalFn._make(num, factors)

    def derive_u(self) -> "RationalFn":
        """Quotient rule in log-derivative form: every factor gains one power."""
        if not self.factors:
            return RationalFn(self.num.derive_u())
        prod = CommPoly.const(1)
        for F in self.factors:
            prod = prod * F
        num = self.num.derive_u() * prod
        for F, (e, _) in self.factors.items():
            rest = CommPoly.const(1)
            for G in self.factors:
                if G is not F:
                    rest = rest * G
            num = num - (self.num * F.derive_u() * rest).scale(e)
        factors = {F: (e + 1, c) for F, (e, c) in self.factors.items()}
        return RationalFn._make(num, factors)

    def __repr__(self):
        return f"RationalFn(({self.num}) / ({self.den}))"


def _poly_key(p: CommPoly):
    return sorted(p.terms)


def _normalize_factor(F: CommPoly) -> Tuple[Scalar, int, CommPoly]:
    """Write ``F = c * R^m * G`` with G free of overall R powers and, when the
    leading coefficient is a unit, with leading coefficient 1."""
    m = F.min_r()
    G = F.shift_r(-m) if m else F
    lead = G.terms[max(G.terms)]
    if lead.is_unit() and lead != ONE:
        return lead, m, G.scale(lead.inverse())
    return ONE, m, G


def _put_factor(factors, F: CommPoly, e: int, cert: PositiveCert, num: CommPoly) -> CommPoly:
    """Insert ``F^e`` into ``factors`` in canonical form; returns the adjusted numerator."""
    c, m, G = _normalize_factor(F)
    if c != ONE:
        num = num.scale(c.inverse() ** e)
    if m:
        num = num.shift_r(-m * e)
    if G.is_one():
        return num
    if G in factors:
        factors[G] = (factors[G][0] + e, factors[G][1])
    else:
        factors[G] = (e, cert)
    return num


def _exact_div(num: CommPoly, F: CommPoly) -> Optional[CommPoly]:
    """``num / F`` when F (leading coefficient 1) divides num exactly, else None."""
    fa, fj = max(F.terms)
    if F.terms[(fa, fj)] != ONE or num.is_zero():
        return None
    fmin = F.min_r()
    jfloor = num.min_r() - fmin
    rem = dict(num.terms)
    quot: Dict[PolyKey, Scalar] = {}
    while rem:
        a, j = max(rem)
        qa, qj = a - fa, j - fj
        if qa < 0 or qj < jfloor:
            return None
        c = rem[(a, j)]
        quot[(qa, qj)] = c
        for (ga, gj), gc in F.terms.items():
            _acc(rem, (ga + qa, gj + qj), -(c * gc))
    return CommPoly._clean(quot)


def _reduce(num: CommPoly, factors: Dict[CommPoly, Tuple[int, PositiveCert]]):
    """Canonicalize factors and cancel those dividing the numerator."""
    if num.is_zero():
        return num, {}
    out: Dict[CommPoly, Tuple[int, PositiveCert]] = {}
    for F, (e, c) in factors.items():
        if e:
            num = _put_factor(out, F, e, c, num)
    for F in list(out):
        e, c = out[F]
        while e:
            q = _exact_div(num, F)
            if q is None:
                break
            num, e = q, e - 1
        if e:
            out[F] = (e, c)
        else:
            del out[F]
    return num, out


def sigma_shift(p: RationalFn, k: int) -> RationalFn:
    if k == 0:
        return p
    factors: Dict[CommPoly, Tuple[int, PositiveCert]] = {}
    num = p.num.sigma(k)
    for F, (e, c) in p.factors.items():
        num = _put_factor(factors, F.sigma(k), e, PositiveCert("sigma-shift", (c,), shift=k), num)
    return RationalFn._make(num, factors)


def rat_inv(f: RationalFn, allow_numeric: bool = True) -> RationalFn:
    if f.is_zero():
        raise NotCertifiedPositive("zero is not invertible")
    num = CommPoly.const(1)
    for F, (e, _) in f.factors.items():
        num = num * F ** e
    return RationalFn(num, f.num, certify(f.num, allow_numeric=allow_numeric))


def phi_eval(f: RationalFn, u, hbar: float):
    """Evaluate ``f`` with U -> u, R -> exp(u); vectorized over ``u``."""
    scalar_input = np.ndim(u) == 0
    uu = np.atleast_1d(np.asarray(u, dtype=float))
    with np.errstate(over="ignore", invalid="ignore"):
        mant, expo = f.num.phi_scaled(uu, hbar)
        for F, (e, _) in f.factors.items():
            md, ed = F.phi_scaled(uu, hbar)
            mag = F.phi_magnitude_scaled(uu, hbar, ed)
            if np.any(np.abs(md) <= 1e-14 * mag):
                raise DenominatorTooSmall(f"denominator factor {F} vanishes numerically")
            mant = mant / md ** e
            expo = expo - e * ed
        out = mant * np.exp(expo)
    return complex(out[0]) if scalar_input else out


# --------------------------------------------------------------------------
# W-graded elements


class LocalElement:
    """``sum_k a_k W^k`` with rational-function coefficients ``a_k``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[int, RationalFn] | None = None):
        self.terms: Dict[int, RationalFn] = {
            int(k): f for k, f in (terms or {}).items() if not f.is_zero()
        }

    @classmethod
    def embed(cls, a: AlgElement) -> "LocalElement":
        by_k: Dict[int, Dict[PolyKey, Scalar]] = {}
        for (alpha, j, k), c in a.terms.items():
            by_k.setdefault(k, {})[(alpha, j)] = c
        return cls({k: RationalFn(CommPoly(t)) for k, t in by_k.items()})

    @classmethod
    def scalar(cls, c: ScalarLike) -> "LocalElement":
        return cls({0: RationalFn.const(c)})

    @classmethod
    def from_rational(cls, f: RationalFn, k: int = 0) -> "LocalElement":
        return cls({k: f})

    @classmethod
    def from_poly(cls, p: CommPoly, k: int = 0) -> "LocalElement":
        return cls({k: RationalFn(p)})

    def is_zero(self) -> bool:
        return not self.terms

    def k0(self) -> RationalFn:
        return self.terms.get(0, RationalFn(CommPoly()))

    def is_k0(self) -> bool:
        return set(self.terms) <= {0}

    def __add__(self, other):
        other = _coerce_local(other)
        out = dict(self.terms)
        for k, f in other.terms.items():
            out[k] = out[k] + f if k in out else f
        return LocalElement(out)

    __radd__ = __add__

    def __neg__(self):
        return LocalElement({k: -f for k, f in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce_local(other))

    def __rsub__(self, other):
        return _coerce_local(other) - self

    def scale(self, c: ScalarLike) -> "LocalElement":
        c = Scalar.coerce(c)
        return LocalElement({k: f.scale(c) for k, f in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, LocalElement):
            return loc_mul(self, other)
        if isinstance(other, AlgElement):
            return loc_mul(self, LocalElement.embed(other))
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, AlgElement):
            return loc_mul(LocalElement.embed(other), self)
        return self.scale(other)

    def __pow__(self, n: int) -> "LocalElement":
        base = self if n >= 0 else loc_inv(self)
        out = LocalElement.scalar(1)
        for _ in range(abs(n)):
            out = loc_mul(out, base)
        return out

    def __eq__(self, other):
        try:
            other = _coerce_local(other)
        except TypeError:
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    __hash__ = None

    def star(self) -> "LocalElement":
        return loc_star(self)

    def inv(self) -> "LocalElement":
        return loc_inv(self)

    def to_alg(self) -> Optional[AlgElement]:
        """The same element as an :class:`AlgElement`, or None if it has denominators."""
        out: Dict = {}
        for k, f in self.terms.items():
            if not f.den.is_one():
                return None
            for (a, j), c in f.num.terms.items():
                out[(a, j, k)] = c
        return AlgElement(out)

    @property
    def certificates(self) -> Dict[int, PositiveCert]:
        return {k: f.den_cert for k, f in self.terms.items()}

    def __repr__(self):
        return f"LocalElement({self})"

    def __str__(self):
        from .printing import format_local

        return format_local(self)


def _coerce_local(x) -> LocalElement:
    if isinstance(x, LocalElement):
        return x
    if isinstance(x, AlgElement):
        return LocalElement.embed(x)
    if isinstance(x, RationalFn):
        return LocalElement({0: x})
    if isinstance(x, CommPoly):
        return LocalElement.from_poly(x)
    return LocalElement.scalar(Scalar.coerce(x))


def loc_mul(a: LocalElement, b: LocalElement) -> LocalElement:
    out: Dict[int, RationalFn] = {}
    for k, fa in a.terms.items():
        for l, fb in b.terms.items():
            prod = fa * sigma_shift(fb, k)
            key = k + l
            out[key] = out[key] + prod if key in out else prod
    return LocalElement(out)


def loc_inv(a: LocalElement, allow_numeric: bool = True) -> LocalElement:
    """Inverse of a single-term element ``f W^k``: ``sigma_{-k}(f^-1) W^-k``."""
    if len(a.terms) != 1:
        raise NotInvertible("only elements of the form f(U,R) W^k can be inverted")
    (k, f), = a.terms.items()
    return LocalElement({-k: sigma_shift(rat_inv(f, allow_numeric), -k)})


def loc_star(a: LocalElement) -> LocalElement:
    # (f W^k)* = W^-k f* = sigma_{-k}(f*) W^-k
    return LocalElement({-k: sigma_shift(f.conj(), -k) for k, f in a.terms.items()})


def _loc_du(a: LocalElement) -> LocalElement:
    return LocalElement({k: f.derive_u() for k, f in a.terms.items()})


def _loc_dv(a: LocalElement) -> LocalElement:
    return LocalElement({k: f.scale(I * k) for k, f in a.terms.items() if k})


def loc_derive(label, a: LocalElement) -> LocalElement:
    label = DerivationLabel(label)
    if label is DerivationLabel.du:
        return _loc_du(a)
    if label is DerivationLabel.dv:
        return _loc_dv(a)
    # d(f W^k) = (1/2 du f + k/2 f) W^k, dbar(f W^k) = (1/2 du f - k/2 f) W^k
    sign = 1 if label is DerivationLabel.d else -1
    out = {}
    for k, f in a.terms.items():
        g = f.derive_u().scale(HALF)
        if k:
            g = g + f.scale(Fraction(sign * k, 2))
        out[k] = g
    return LocalElement(out)


def loc_phi_eval(a: LocalElement, u, hbar: float):
    """phi of the k=0 part; the other components are not functions of u alone."""
    return phi_eval(a.k0(), u, hbar)


# named elements used across the package
def generator(name: str) -> LocalElement:
    table = {
        "U": CommPoly.mono(1, 0),
        "R": CommPoly.mono(0, 1),
        "R^-1": CommPoly.mono(0, -1),
    }
    if name in table:
        return LocalElement.from_poly(table[name])
    if name == "W":
        return LocalElement.from_poly(CommPoly.const(1), 1)
    if name == "W^-1":
        return LocalElement.from_poly(CommPoly.const(1), -1)
    raise KeyError(name)


def sum_local(items: Iterable[LocalElement]) -> LocalElement:
    out = LocalElement()
    for x in items:
        out = out + x
    return out
