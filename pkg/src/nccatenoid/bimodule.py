"""Left/right module structures on functions of (x, k) in R x Z, and their connections.

Test functions are finite sums of ``P(x) exp(c x) exp(-g (x - x0)^2)`` per
k, a family closed under every action used here (shifts, exponential and
linear multipliers, d/dx, multiplication by x), so all actions are exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import Polynomial

from .errors import (
    ConstraintViolation,
    DegenerateParams,
    EqualPlanck,
    IncompatibleRatio,
)
from .freealg import RULES, FreeElement, Letter, Word
from .integration import QuadratureConfig, integrate_line
from .nfalg import GENERATORS, AlgElement, nf_derive

CONSTRAINT_TOL = 1e-12


@dataclass(frozen=True)
class GaussTerm:
    coeffs: Tuple[complex, ...]  # polynomial in x, ascending powers
    rate: float = 0.0
    width: float = 1.0
    center: float = 0.0

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError("Gaussian width must be positive")

    @property
    def poly(self) -> Polynomial:
        return Polynomial(np.asarray(self.coeffs, dtype=complex))

    def _with(self, poly: Polynomial, **kw) -> "GaussTerm":
        return GaussTerm(tuple(complex(c) for c in poly.coef), **{
            "rate": self.rate, "width": self.width, "center": self.center, **kw})

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return self.poly(x) * np.exp(self.rate * x - self.width * (x - self.center) ** 2)

    def shifted(self, eps: float) -> "GaussTerm":
        """The term evaluated at x - eps."""
        p = self.poly(Polynomial([-eps, 1.0])) * np.exp(-self.rate * eps)
        return self._with(p, center=self.center + eps)

    def derivative(self) -> "GaussTerm":
        p = self.poly
        x_minus = Polynomial([-self.center, 1.0])
        return self._with(p.deriv() + self.rate * p - 2 * self.width * x_minus * p)


class TestFunction:
    """``xi(x, k) = sum_terms P(x) exp(c x - g (x - x0)^2)`` with finite k-support."""

    __test__ = False  # not a pytest class

    def __init__(self, terms: Dict[int, Sequence[GaussTerm]] | None = None):
        self.terms: Dict[int, Tuple[GaussTerm, ...]] = {
            int(k): tuple(v) for k, v in (terms or {}).items() if v
        }

    @classmethod
    def gaussian(cls, k: int, coeffs=(1.0,), width: float = 1.0, center: float = 0.0,
                 rate: float = 0.0) -> "TestFunction":
        return cls({k: (GaussTerm(tuple(complex(c) for c in coeffs), rate, width, center),)})

    @property
    def support(self) -> List[int]:
        return sorted(self.terms)

    def __call__(self, x, k: int):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x, dtype=complex)
        for t in self.terms.get(int(k), ()):
            out = out + t(x)
        return out

    def grid(self, xs, ks) -> np.ndarray:
        return np.array([self(xs, k) for k in ks])

    def _map(self, fn) -> "TestFunction":
        return TestFunction({k: tuple(fn(k, t) for t in ts) for k, ts in self.terms.items()})

    def __add__(self, other: "TestFunction") -> "TestFunction":
        out = {k: list(v) for k, v in self.terms.items()}
        for k, ts in other.terms.items():
            out.setdefault(k, []).extend(ts)
        return TestFunction(out)

    def scale(self, c: complex) -> "TestFunction":
        return self._map(lambda k, t: t._with(t.poly * c))

    def __neg__(self):
        return self.scale(-1.0)

    def __sub__(self, other):
        return self + (-other)

    def shift(self, eps: float, r: int) -> "TestFunction":
        """``(x, k) -> xi(x - eps, k - r)``."""
        return TestFunction({k + r: tuple(t.shifted(eps) for t in ts) for k, ts in self.terms.items()})

    def mul_exp(self, a: float, b: float) -> "TestFunction":
        """Multiply by ``exp(a x + b k)``."""
        return self._map(lambda k, t: t._with(t.poly * np.exp(b * k), rate=t.rate + a))

    def mul_linear(self, a: float, b: float) -> "TestFunction":
        """Multiply by ``a x + b k``."""
        return self._map(lambda k, t: t._with(t.poly * Polynomial([b * k, a])))

    def mul_x(self) -> "TestFunction":
        return self.mul_linear(1.0, 0.0)

    def derivative(self) -> "TestFunction":
        return self._map(lambda k, t: t.derivative())


# --------------------------------------------------------------------------
# parameters


def _check(value: float, target: float, what: str) -> None:
    if abs(value - target) > CONSTRAINT_TOL * max(1.0, abs(target)):
        raise ConstraintViolation(f"{what}: got {value!r}, expected {target!r}")


@dataclass(frozen=True)
class LeftParams:
    lambda0: float
    lambda1: float
    eps: float
    r: int
    hbar: float
    check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        if self.check:
            _check(self.lambda0 * self.eps + self.lambda1 * self.r, -self.hbar,
                   "lambda0*eps + lambda1*r = -hbar")


@dataclass(frozen=True)
class RightParams:
    """Right action parameters; ``sign=-1`` selects mu0*eps' + mu1*r' = -hbar'."""

    mu0: float
    mu1: float
    epsp: float
    rp: int
    hbarp: float
    sign: int = 1
    check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        if self.check:
            _check(self.mu0 * self.epsp + self.mu1 * self.rp, self.sign * self.hbarp,
                   "mu0*eps' + mu1*r' = sign*hbar'")


@dataclass(frozen=True)
class BimoduleParams:
    left: LeftParams
    right: RightParams
    check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        if self.check:
            L, R = self.left, self.right
            _check(L.lambda0 * R.epsp + L.lambda1 * R.rp, 0.0, "lambda0*eps' + lambda1*r' = 0")
            _check(R.mu0 * L.eps + R.mu1 * L.r, 0.0, "mu0*eps + mu1*r = 0")

    def to_dict(self) -> dict:
        L, R = self.left, self.right
        return {
            "lambda0": L.lambda0, "lambda1": L.lambda1, "eps": L.eps, "r": L.r, "hbar": L.hbar,
            "mu0": R.mu0, "mu1": R.mu1, "epsp": R.epsp, "rp": R.rp, "hbarp": R.hbarp,
            "right_sign": R.sign,
        }


def bimodule_params_from_display(hbar: float, hbarp: float, eps: float, epsp: float,
                                 right_sign: int = 1) -> BimoduleParams:
    """The r = r' = 1 family valid for arbitrary hbar, hbar' (needs eps != eps')."""
    if eps == epsp:
        raise DegenerateParams("this family needs eps != eps'")
    delta = eps - epsp
    left = LeftParams(-hbar / delta, hbar * epsp / delta, eps, 1, hbar)
    mu0, mu1 = -hbarp / delta, hbarp * eps / delta
    right = RightParams(right_sign * mu0, right_sign * mu1, epsp, 1, hbarp, sign=right_sign)
    return BimoduleParams(left, right)


def solve_connection_params(hbar: float, hbarp: float, eps: float, r: int, rp: int) -> BimoduleParams:
    """Parameters admitting the bimodule connection nabla_u = d/dx / lambda0, nabla_v = i x / eps."""
    if eps == 0:
        raise DegenerateParams("eps must be nonzero")
    if hbar == hbarp:
        if hbar != 0:
            raise EqualPlanck("a bimodule connection with hbar = hbar' forces hbar = hbar' = 0")
        raise DegenerateParams("hbar = hbar' = 0 gives lambda0 = 0")
    if r == 0 or rp == 0:
        raise DegenerateParams("r and r' must be nonzero")
    if hbarp == 0 or hbar == 0 or abs(r / rp - hbar / hbarp) > 1e-12 * max(1.0, abs(hbar / hbarp)):
        raise IncompatibleRatio(
            f"need r/r' = hbar/hbar' (got r/r' = {r}/{rp}, hbar/hbar' = {hbar!r}/{hbarp!r})"
        )
    lambda0 = hbar * rp / (eps * (r - rp))
    left = LeftParams(lambda0, -hbar / (r - rp), eps, r, hbar)
    right = RightParams(lambda0, -hbarp / (r - rp), eps, rp, hbarp)
    return BimoduleParams(left, right)


def predicted_curvature(hbar: float, hbarp: float) -> complex:
    return 1j * (hbar - hbarp) / (hbar * hbarp)


# --------------------------------------------------------------------------
# actions


def act_left(gen: Letter, p: LeftParams, xi: TestFunction) -> TestFunction:
    gen = Letter(gen)
    if gen is Letter.W:
        return xi.shift(p.eps, p.r)
    if gen is Letter.Winv:
        return xi.shift(-p.eps, -p.r)
    if gen is Letter.R:
        return xi.mul_exp(p.lambda0, p.lambda1)
    if gen is Letter.Rinv:
        return xi.mul_exp(-p.lambda0, -p.lambda1)
    return xi.mul_linear(p.lambda0, p.lambda1)


def act_right(xi: TestFunction, gen: Letter, p: RightParams) -> TestFunction:
    gen = Letter(gen)
    if gen is Letter.W:
        return xi.shift(p.epsp, p.rp)
    if gen is Letter.Winv:
        return xi.shift(-p.epsp, -p.rp)
    if gen is Letter.R:
        return xi.mul_exp(p.mu0, p.mu1)
    if gen is Letter.Rinv:
        return xi.mul_exp(-p.mu0, -p.mu1)
    return xi.mul_linear(p.mu0, p.mu1)


def act_left_word(word: Word, p: LeftParams, xi: TestFunction) -> TestFunction:
    for g in reversed(word):
        xi = act_left(g, p, xi)
    return xi


def act_right_word(xi: TestFunction, word: Word, p: RightParams) -> TestFunction:
    for g in word:
        xi = act_right(xi, g, p)
    return xi


def _zero() -> TestFunction:
    return TestFunction()


def act_left_free(x: FreeElement, p: LeftParams, xi: TestFunction) -> TestFunction:
    out = _zero()
    for w, c in x.terms.items():
        out = out + act_left_word(w, p, xi).scale(c.evaluate(p.hbar))
    return out


def act_right_free(xi: TestFunction, x: FreeElement, p: RightParams) -> TestFunction:
    out = _zero()
    for w, c in x.terms.items():
        out = out + act_right_word(xi, w, p).scale(c.evaluate(p.hbarp))
    return out


def _mono_word(m) -> Word:
    from .nfalg import monomial_word

    return monomial_word(m)


def act_left_alg(a: AlgElement, p: LeftParams, xi: TestFunction) -> TestFunction:
    out = _zero()
    for m, c in a.terms.items():
        out = out + act_left_word(_mono_word(m), p, xi).scale(c.evaluate(p.hbar))
    return out


def act_right_alg(xi: TestFunction, a: AlgElement, p: RightParams) -> TestFunction:
    out = _zero()
    for m, c in a.terms.items():
        out = out + act_right_word(xi, _mono_word(m), p).scale(c.evaluate(p.hbarp))
    return out


STAR = {
    Letter.U: Letter.U,
    Letter.R: Letter.R,
    Letter.Rinv: Letter.Rinv,
    Letter.W: Letter.Winv,
    Letter.Winv: Letter.W,
}


# --------------------------------------------------------------------------
# verification


DEFAULT_XS = np.linspace(-3.0, 3.0, 20)
DEFAULT_KS = tuple(range(-5, 6))


def standard_test_functions() -> List[TestFunction]:
    xi1 = TestFunction.gaussian(0, (1.0, 0.5), width=1.0) + TestFunction.gaussian(
        1, (0.3 - 0.2j,), width=0.5, center=0.5)
    xi2 = TestFunction.gaussian(-1, ((1 + 0.5j) * -1, 0.0, 1 + 0.5j), width=0.7, center=-0.3) \
        + TestFunction.gaussian(2, (0.8,), width=1.0, center=1.0)
    xi3 = TestFunction.gaussian(0, (0.0, 1j), width=1.2) + TestFunction.gaussian(
        -2, (0.5, -0.25), width=0.4, center=0.2)
    return [xi1, xi2, xi3]


def grid_residual(lhs: TestFunction, rhs: TestFunction, xs=DEFAULT_XS, ks=DEFAULT_KS) -> float:
    """``max |lhs - rhs| / max(1, max|lhs|, max|rhs|)`` over the sample grid."""
    a, b = lhs.grid(xs, ks), rhs.grid(xs, ks)
    scale = max(1.0, float(np.max(np.abs(a))), float(np.max(np.abs(b))))
    return float(np.max(np.abs(a - b))) / scale


@dataclass
class ResidualReport:
    entries: List[Tuple[str, str, float]] = field(default_factory=list)

    def add(self, section: str, name: str, value: float) -> None:
        self.entries.append((section, name, float(value)))

    def extend(self, other: "ResidualReport") -> None:
        self.entries.extend(other.entries)

    def by_section(self) -> Dict[str, float]:
        out: Dict[str, float] = {}
        for section, _, v in self.entries:
            out[section] = max(out.get(section, 0.0), v)
        return out

    def worst(self, section: Optional[str] = None) -> Tuple[str, float]:
        rows = [(n, v) for s, n, v in self.entries if section is None or s == section]
        name, value = max(rows, key=lambda r: r[1]) if rows else ("", 0.0)
        return name, value

    @property
    def max_residual(self) -> float:
        return max((v for _, _, v in self.entries), default=0.0)

    def passed(self, tol: float) -> bool:
        return self.max_residual < tol

    def to_dict(self) -> dict:
        return {
            "max_residual": self.max_residual,
            "sections": self.by_section(),
            "entries": [{"section": s, "identity": n, "residual": v} for s, n, v in self.entries],
        }


def _rule_label(rule) -> str:
    lhs = "".join(g.symbol for g in rule.lhs)
    return f"{rule.name}: {lhs}"


def relation_residuals(p: BimoduleParams, xis: Iterable[TestFunction], xs=DEFAULT_XS,
                       ks=DEFAULT_KS) -> ResidualReport:
    rep = ResidualReport()
    xis = list(xis)
    for rule in RULES:
        lhs_word = FreeElement({rule.lhs: 1})
        rhs = rule.rhs_element()
        left = max(grid_residual(act_left_free(lhs_word, p.left, xi),
                                 act_left_free(rhs, p.left, xi), xs, ks) for xi in xis)
        right = max(grid_residual(act_right_free(xi, lhs_word, p.right),
                                  act_right_free(xi, rhs, p.right), xs, ks) for xi in xis)
        rep.add("left_relations", _rule_label(rule), left)
        rep.add("right_relations", _rule_label(rule), right)
    return rep


def mixed_residuals(p: BimoduleParams, xis: Iterable[TestFunction], xs=DEFAULT_XS,
                    ks=DEFAULT_KS) -> ResidualReport:
    rep = ResidualReport()
    xis = list(xis)
    for A in Letter:
        for B in Letter:
            worst = max(
                grid_residual(act_right(act_left(A, p.left, xi), B, p.right),
                              act_left(A, p.left, act_right(xi, B, p.right)), xs, ks)
                for xi in xis
            )
            rep.add("mixed", f"({A.symbol} xi) {B.symbol} = {A.symbol} (xi {B.symbol})", worst)
    return rep


def inner_product(xi: TestFunction, eta: TestFunction,
                  cfg: QuadratureConfig = QuadratureConfig(abs_tol=1e-12)) -> complex:
    """``sum_k integral xi(x,k) conj(eta(x,k)) dx``."""
    total = 0j
    for k in sorted(set(xi.terms) & set(eta.terms)):
        res = integrate_line(lambda x, k=k: xi(x, k) * np.conj(eta(x, k)), cfg)
        total += res.value
    return total


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / max(1.0, abs(a), abs(b))


def adjoint_residuals(p: BimoduleParams, xis: Sequence[TestFunction],
                      cfg: QuadratureConfig = QuadratureConfig(abs_tol=1e-12)) -> ResidualReport:
    rep = ResidualReport()
    pairs = [(a, b) for a in xis for b in xis]
    for g in Letter:
        gs = STAR[g]
        left = max(_rel(inner_product(act_left(g, p.left, xi), eta, cfg),
                        inner_product(xi, act_left(gs, p.left, eta), cfg)) for xi, eta in pairs)
        right = max(_rel(inner_product(act_right(xi, g, p.right), eta, cfg),
                         inner_product(xi, act_right(eta, gs, p.right), cfg)) for xi, eta in pairs)
        rep.add("left_adjoint", f"<{g.symbol} xi, eta> = <xi, {gs.symbol} eta>", left)
        rep.add("right_adjoint", f"<xi {g.symbol}, eta> = <xi, eta {gs.symbol}>", right)
    return rep


def verify_structure(p: BimoduleParams, xis: Sequence[TestFunction] | None = None,
                     xs=DEFAULT_XS, ks=DEFAULT_KS, inner: bool = True,
                     cfg: QuadratureConfig = QuadratureConfig(abs_tol=1e-12)) -> ResidualReport:
    """Residuals of every module relation, bimodule compatibility and adjointness."""
    xis = list(xis) if xis is not None else standard_test_functions()
    rep = relation_residuals(p, xis, xs, ks)
    rep.extend(mixed_residuals(p, xis, xs, ks))
    if inner:
        rep.extend(adjoint_residuals(p, xis, cfg))
    return rep


# --------------------------------------------------------------------------
# connections


def nabla_u(xi: TestFunction, alpha: complex) -> TestFunction:
    return xi.derivative().scale(alpha)


def nabla_v(xi: TestFunction, beta: complex) -> TestFunction:
    return xi.mul_x().scale(beta)


def connection_coefficients(p: BimoduleParams) -> Tuple[complex, complex]:
    if p.left.lambda0 == 0 or p.left.eps == 0:
        raise DegenerateParams("the connection needs lambda0 != 0 and eps != 0")
    return 1.0 / p.left.lambda0, 1j / p.left.eps


def connection(p: BimoduleParams, xi: TestFunction) -> Tuple[TestFunction, TestFunction]:
    alpha, beta = connection_coefficients(p)
    return nabla_u(xi, alpha), nabla_v(xi, beta)


def leibniz_residuals(p: BimoduleParams, xis: Sequence[TestFunction], xs=DEFAULT_XS,
                      ks=DEFAULT_KS) -> ResidualReport:
    """Leibniz rules for both actions, with d_u, d_v acting on generators."""
    alpha, beta = connection_coefficients(p)
    ops = {"du": lambda x: nabla_u(x, alpha), "dv": lambda x: nabla_v(x, beta)}
    rep = ResidualReport()
    for label, nab in ops.items():
        for g in Letter:
            a = GENERATORS[g]
            da = nf_derive(label, a)
            left = max(grid_residual(
                nab(act_left(g, p.left, xi)),
                act_left(g, p.left, nab(xi)) + act_left_alg(da, p.left, xi), xs, ks) for xi in xis)
            right = max(grid_residual(
                nab(act_right(xi, g, p.right)),
                act_right(nab(xi), g, p.right) + act_right_alg(xi, da, p.right), xs, ks)
                for xi in xis)
            rep.add("left_leibniz", f"nabla_{label[1]}({g.symbol} xi)", left)
            rep.add("right_leibniz", f"nabla_{label[1]}(xi {g.symbol})", right)
    return rep


def measured_curvature(p: BimoduleParams, xi: TestFunction, xs=DEFAULT_XS, ks=DEFAULT_KS,
                       floor: float = 1e-6) -> np.ndarray:
    """Pointwise ``((nabla_u nabla_v - nabla_v nabla_u) xi) / xi`` where ``|xi| > floor``."""
    alpha, beta = connection_coefficients(p)
    comm = nabla_u(nabla_v(xi, beta), alpha) - nabla_v(nabla_u(xi, alpha), beta)
    num, den = comm.grid(xs, ks), xi.grid(xs, ks)
    mask = np.abs(den) > floor
    return num[mask] / den[mask]


def curvature_check(p: BimoduleParams, xis: Sequence[TestFunction], xs=DEFAULT_XS,
                    ks=DEFAULT_KS) -> dict:
    alpha, beta = connection_coefficients(p)
    predicted = predicted_curvature(p.left.hbar, p.right.hbarp) if p.left.hbar != p.right.hbarp \
        else alpha * beta
    samples = np.concatenate([measured_curvature(p, xi, xs, ks) for xi in xis])
    err = float(np.max(np.abs(samples - predicted)))
    return {
        "predicted": predicted,
        "alpha_beta": alpha * beta,
        "measured_mean": complex(np.mean(samples)),
        "max_deviation": err,
        "samples": int(samples.size),
    }
