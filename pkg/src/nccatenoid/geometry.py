"""Vector fields, hermitian metrics, the Levi-Civita connection and curvature.

Vector fields are written ``X = Phi a + Phibar b`` and stored as the pair
``(a, b)``. Index 1 refers to ``Phi``/``d``, index 2 to ``Phibar``/``dbar``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .coeff import I, Scalar
from .localization import (
    CommPoly,
    LocalElement,
    loc_derive,
    loc_inv,
    sum_local,
)
from .nfalg import AlgElement

ZERO = LocalElement()
ONE = LocalElement.scalar(1)
HALF = Fraction(1, 2)
DERIV = {1: "d", 2: "dbar"}


def d(x: LocalElement) -> LocalElement:
    return loc_derive("d", x)


def dbar(x: LocalElement) -> LocalElement:
    return loc_derive("dbar", x)


def du(x: LocalElement) -> LocalElement:
    return loc_derive("du", x)


def derive_index(a: int, x: LocalElement) -> LocalElement:
    return loc_derive(DERIV[a], x)


@dataclass(frozen=True)
class VectorField:
    a: LocalElement
    b: LocalElement

    def component(self, idx: int) -> LocalElement:
        return self.a if idx == 1 else self.b

    def __add__(self, other: "VectorField") -> "VectorField":
        return VectorField(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "VectorField") -> "VectorField":
        return VectorField(self.a - other.a, self.b - other.b)

    def right_mul(self, f: LocalElement) -> "VectorField":
        return VectorField(self.a * f, self.b * f)

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()


PHI = VectorField(ONE, ZERO)
PHIBAR = VectorField(ZERO, ONE)
BASIS = {1: PHI, 2: PHIBAR}


def basis_field(idx: int) -> VectorField:
    return BASIS[idx]


def J(X: VectorField) -> VectorField:
    """Almost complex structure: J Phi = i Phi, J Phibar = -i Phibar."""
    return VectorField(X.a.scale(I), X.b.scale(-I))


@dataclass(frozen=True)
class EmbeddingTriple:
    c1: LocalElement
    c2: LocalElement
    c3: LocalElement

    def __iter__(self):
        return iter((self.c1, self.c2, self.c3))


def phi_components_alg() -> Tuple[AlgElement, AlgElement, AlgElement]:
    """Components of Phi inside the polynomial algebra (no localization)."""
    q = Scalar.q()
    rw = AlgElement.mono(0, 1, 1)
    rw_inv = AlgElement.mono(0, -1, -1)
    p1 = (rw - rw_inv).scale(q * HALF)
    p2 = (rw + rw_inv).scale(-I * q * HALF)
    p3 = AlgElement.scalar(1)
    return p1, p2, p3


def phi_vector() -> EmbeddingTriple:
    return EmbeddingTriple(*(LocalElement.embed(p) for p in phi_components_alg()))


def embedding_coords_alg() -> Tuple[AlgElement, AlgElement, AlgElement]:
    q = Scalar.q()
    rw = AlgElement.mono(0, 1, 1)
    rw_inv = AlgElement.mono(0, -1, -1)
    s = rw + rw_inv
    t = rw - rw_inv
    x1 = (s + s.star()).scale(q * HALF)
    x2 = (t - t.star()).scale(-I * q * HALF)
    x3 = AlgElement.mono(1, 0, 0)
    return x1, x2, x3


def embedding_coords() -> EmbeddingTriple:
    return EmbeddingTriple(*(LocalElement.embed(x) for x in embedding_coords_alg()))


def free_module_form(x: EmbeddingTriple, y: EmbeddingTriple) -> LocalElement:
    """``sum_i (x^i)* y^i`` on the free module of rank three."""
    return sum_local(xi.star() * yi for xi, yi in zip(x, y))


def conjugate_triple(x: EmbeddingTriple) -> EmbeddingTriple:
    return EmbeddingTriple(*(c.star() for c in x))


# --------------------------------------------------------------------------
# metrics


@dataclass(frozen=True)
class Metric:
    """Diagonal hermitian form ``h(Phi,Phi) = S``, ``h(Phibar,Phibar) = T``."""

    S: LocalElement
    T: LocalElement
    S_inv: LocalElement = field(init=False, repr=False, compare=False)
    T_inv: LocalElement = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "S_inv", loc_inv(self.S))
        object.__setattr__(self, "T_inv", loc_inv(self.T))

    @classmethod
    def conformal(cls, S: LocalElement) -> "Metric":
        return cls(S, S)

    def is_conformal(self) -> bool:
        return self.S == self.T

    def component(self, idx: int) -> LocalElement:
        return self.S if idx == 1 else self.T

    def h(self, X: VectorField, Y: VectorField) -> LocalElement:
        """``h(X, Y) = a_X* S a_Y + b_X* T b_Y``; antilinear in the first slot."""
        return X.a.star() * self.S * Y.a + X.b.star() * self.T * Y.b

    def is_hermitian(self) -> bool:
        return self.S.star() == self.S and self.T.star() == self.T


def induced_metric_components() -> Tuple[LocalElement, LocalElement]:
    half = Scalar.coerce(HALF)
    r2 = CommPoly.mono(0, 2) + CommPoly.mono(0, -2)
    S = CommPoly.const(1) + r2.scale(half * Scalar.q(-2))
    T = CommPoly.const(1) + r2.scale(half * Scalar.q(2))
    return LocalElement.from_poly(S), LocalElement.from_poly(T)


def induced_metric() -> Metric:
    return Metric(*induced_metric_components())


def induced_metric_from_phi() -> Tuple[LocalElement, LocalElement, LocalElement]:
    """(h(Phi,Phi), h(Phibar,Phibar), h(Phi,Phibar)) from the free-module form."""
    phi = phi_vector()
    phibar = conjugate_triple(phi)
    return (
        free_module_form(phi, phi),
        free_module_form(phibar, phibar),
        free_module_form(phi, phibar),
    )


def catenoid_conformal_factor() -> LocalElement:
    """``(R + R^-1)^2 / 4``, whose image is cosh(u)^2."""
    p = (CommPoly.mono(0, 1) + CommPoly.mono(0, -1)) ** 2
    return LocalElement.from_poly(p.scale(Fraction(1, 4)))


def conformal_catenoid_metric() -> Metric:
    return Metric.conformal(catenoid_conformal_factor())


# --------------------------------------------------------------------------
# connections


class Connection:
    """Connection given by Christoffel symbols ``nabla_a Phi_b = Phi_c Gamma^c_{ab}``."""

    def __init__(self, gammas: Dict[Tuple[int, int, int], LocalElement] | None = None):
        self.gammas = {k: v for k, v in (gammas or {}).items() if not v.is_zero()}

    @classmethod
    def from_coefficients(cls, gamma1: LocalElement, gamma2: LocalElement) -> "Connection":
        """Torsion-free almost complex shape: only Gamma^1_11 and Gamma^2_22."""
        return cls({(1, 1, 1): gamma1, (2, 2, 2): gamma2})

    def gamma(self, c: int, a: int, b: int) -> LocalElement:
        return self.gammas.get((c, a, b), ZERO)

    @property
    def gamma1(self) -> LocalElement:
        return self.gamma(1, 1, 1)

    @property
    def gamma2(self) -> LocalElement:
        return self.gamma(2, 2, 2)

    def covariant(self, a: int, X: VectorField) -> VectorField:
        """``nabla_a X = Phi_c (d_a X^c + Gamma^c_{ab} X^b)``."""
        comps = []
        for c in (1, 2):
            val = derive_index(a, X.component(c))
            for b in (1, 2):
                g = self.gamma(c, a, b)
                if not g.is_zero():
                    val = val + g * X.component(b)
            comps.append(val)
        return VectorField(*comps)

    def curvature(self, p: int, q: int, X: VectorField) -> VectorField:
        """``R(d_p, d_q) X``; the derivations commute so no bracket term."""
        return self.covariant(p, self.covariant(q, X)) - self.covariant(q, self.covariant(p, X))

    def torsion_residual(self) -> VectorField:
        return self.covariant(1, PHIBAR) - self.covariant(2, PHI)

    def almost_complex_residual(self, a: int, X: VectorField) -> VectorField:
        return self.covariant(a, J(X)) - J(self.covariant(a, X))

    def metric_residual(self, m: Metric, a: int, X: VectorField, Y: VectorField) -> LocalElement:
        """``d_a h(X,Y) - h(nabla_{d_a*} X, Y) - h(X, nabla_a Y)`` with d* = dbar."""
        a_star = 2 if a == 1 else 1
        return (
            derive_index(a, m.h(X, Y))
            - m.h(self.covariant(a_star, X), Y)
            - m.h(X, self.covariant(a, Y))
        )

    def metric_residuals(self, m: Metric) -> Dict[str, LocalElement]:
        out = {}
        for a in (1, 2):
            for i in (1, 2):
                for j in (1, 2):
                    key = f"{DERIV[a]} h(Phi_{i},Phi_{j})"
                    out[key] = self.metric_residual(m, a, BASIS[i], BASIS[j])
        return out


def levi_civita(m: Metric) -> Connection:
    gamma1 = m.S_inv * d(m.S)
    gamma2 = m.T_inv * dbar(m.T)
    return Connection.from_coefficients(gamma1, gamma2)


def compatibility_residuals(m: Metric, gamma1: LocalElement, gamma2: LocalElement):
    """The four scalar identities fixing a torsion-free almost complex connection."""
    return {
        "dS - S G1": d(m.S) - m.S * gamma1,
        "dbarS - G1* S": dbar(m.S) - gamma1.star() * m.S,
        "dbarT - T G2": dbar(m.T) - m.T * gamma2,
        "dT - G2* T": d(m.T) - gamma2.star() * m.T,
    }


@dataclass(frozen=True)
class CurvatureReport:
    r1_112: LocalElement
    r2_212: LocalElement
    r1_212: LocalElement
    r2_112: LocalElement
    r_1212: LocalElement
    r_2112: LocalElement
    ric_11: LocalElement
    ric_12: LocalElement
    ric_21: LocalElement
    ric_22: LocalElement
    scalar: LocalElement
    gaussian: Optional[LocalElement] = None

    def components(self) -> Dict[str, LocalElement]:
        out = {
            "R^1_112": self.r1_112,
            "R^2_212": self.r2_212,
            "R^1_212": self.r1_212,
            "R^2_112": self.r2_112,
            "R_1212": self.r_1212,
            "R_2112": self.r_2112,
            "Ric_11": self.ric_11,
            "Ric_12": self.ric_12,
            "Ric_21": self.ric_21,
            "Ric_22": self.ric_22,
            "scalar": self.scalar,
        }
        if self.gaussian is not None:
            out["gaussian"] = self.gaussian
        return out


def curvature_report(m: Metric, conn: Connection | None = None) -> CurvatureReport:
    """All curvature components, computed by applying the connection twice."""
    conn = conn or levi_civita(m)
    rphi = conn.curvature(1, 2, PHI)  # = Phi R^1_112 + Phibar R^2_112
    rphibar = conn.curvature(1, 2, PHIBAR)  # = Phi R^1_212 + Phibar R^2_212
    r1_112, r2_112 = rphi.a, rphi.b
    r1_212, r2_212 = rphibar.a, rphibar.b
    # lowered with Phibar_1 = Phibar, Phibar_2 = Phi
    r_1212 = m.h(PHIBAR, rphibar)
    r_2112 = m.h(PHI, rphi)
    # Ric_ab = R^p_{apb}; R(d_p, d_p) = 0 and R(dbar, d) = -R(d, dbar)
    ric_11 = -r2_112
    ric_12 = r1_112
    ric_21 = -r2_212
    ric_22 = r1_212
    scalar = -(m.T_inv * r_1212 * m.S_inv) + m.S_inv * r_2112 * m.T_inv
    gaussian = scalar.scale(HALF) if m.is_conformal() else None
    return CurvatureReport(
        r1_112=r1_112,
        r2_212=r2_212,
        r1_212=r1_212,
        r2_112=r2_112,
        r_1212=r_1212,
        r_2112=r_2112,
        ric_11=ric_11,
        ric_12=ric_12,
        ric_21=ric_21,
        ric_22=ric_22,
        scalar=scalar,
        gaussian=gaussian,
    )


def closed_form_curvature(m: Metric) -> Dict[str, LocalElement]:
    """The same components from the explicit formulas (used as a cross-check)."""
    log_s = m.S_inv * d(m.S)
    log_t = m.T_inv * dbar(m.T)
    out = {
        "R^1_112": -dbar(log_s),
        "R^2_212": d(log_t),
        "R_1212": m.T * d(log_t),
        "R_2112": -(m.S * dbar(log_s)),
        "Ric_12": -dbar(log_s),
        "Ric_21": -d(log_t),
        "scalar": -(d(log_t) * m.S_inv) - dbar(log_s) * m.T_inv,
    }
    return out


def gaussian_closed_form(S: LocalElement) -> LocalElement:
    """``-1/4 du(S^-1 du S) S^-1`` for a conformal metric."""
    s_inv = loc_inv(S)
    return (du(s_inv * du(S)) * s_inv).scale(Fraction(-1, 4))


# --------------------------------------------------------------------------
# gradient, divergence, Laplacian


def gradient(m: Metric, f: LocalElement) -> VectorField:
    return VectorField(m.S_inv * dbar(f), m.T_inv * d(f))


def divergence(m: Metric, X: VectorField) -> LocalElement:
    return m.S_inv * d(m.S * X.a) + m.T_inv * dbar(m.T * X.b)


def laplacian(m: Metric, f: LocalElement) -> LocalElement:
    return divergence(m, gradient(m, f))


def laplacian_closed_form(m: Metric, f: LocalElement) -> LocalElement:
    return (m.S_inv + m.T_inv) * d(dbar(f))


def harmonic_check(m: Metric) -> Dict[str, LocalElement]:
    return {f"Delta(X^{i})": laplacian(m, x) for i, x in enumerate(embedding_coords(), start=1)}


def isotropy_alg() -> AlgElement:
    p1, p2, p3 = phi_components_alg()
    return p1 * p1 + p2 * p2 + p3 * p3


def solve_basis_coefficients(a: LocalElement, b: LocalElement) -> Tuple[LocalElement, LocalElement]:
    """Recover (a, b) from the three components of ``Phi a + Phibar b``.

    Uses the isotropy identity: multiplying component i on the left by Phi^i
    and summing kills the ``a`` part and leaves ``(sum Phi^i Phi^i*) b = T b``.
    """
    phi = phi_vector()
    comps = [p * a + p.star() * b for p in phi]
    T_b = sum_local(p * c for p, c in zip(phi, comps))
    S_a = sum_local(p.star() * c for p, c in zip(phi, comps))
    S, T = induced_metric_components()
    return loc_inv(S) * S_a, loc_inv(T) * T_b
