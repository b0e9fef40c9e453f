"""Integrals over the real line of phi-images, and the total curvature."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NonIntegrable
from .localization import LocalElement, RationalFn, phi_eval

TWO_PI = 2 * np.pi
FOUR_PI = 4 * np.pi


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-9
    initial_halfwidth: float = 10.0
    max_halfwidth: float = 160.0
    tail_threshold: float = 1e-12

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        if not 0 < self.initial_halfwidth <= self.max_halfwidth:
            raise ValueError("halfwidths must be positive and increasing")


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error: float
    halfwidth: float
    tail: complex = 0j

    def __complex__(self):
        return complex(self.value)

    @property
    def real(self) -> float:
        return float(np.real(self.value))

    def scaled(self, factor: float) -> "QuadratureResult":
        return QuadratureResult(
            self.value * factor, self.error * abs(factor), self.halfwidth, self.tail * factor
        )

    def to_dict(self) -> dict:
        return {
            "value": {"re": float(np.real(self.value)), "im": float(np.imag(self.value))},
            "error_estimate": self.error,
            "halfwidth": self.halfwidth,
        }


def adaptive_simpson(f: Callable, a: float, b: float, tol: float, panels: int = 64,
                     min_width: float = 1e-9, max_rounds: int = 60):
    """Vectorized adaptive Simpson; returns (integral, error estimate).

    All active panels are refined together each round; a panel is accepted
    once its local error is below its share of ``tol``.
    """
    edges = np.linspace(a, b, panels + 1)
    lo, hi = edges[:-1], edges[1:]
    mid = 0.5 * (lo + hi)
    fl, fm, fh = f(lo), f(mid), f(hi)
    width_total = b - a
    total = 0j
    err_total = 0.0
    for _ in range(max_rounds):
        if lo.size == 0:
            break
        lm, rm = 0.5 * (lo + mid), 0.5 * (mid + hi)
        flm, frm = f(lm), f(rm)
        h = hi - lo
        whole = h / 6 * (fl + 4 * fm + fh)
        left = h / 12 * (fl + 4 * flm + fm)
        right = h / 12 * (fm + 4 * frm + fh)
        diff = left + right - whole
        local_tol = tol * h / width_total
        done = (np.abs(diff) <= 15 * local_tol) | (h < min_width)
        total += np.sum((left + right + diff / 15)[done])
        err_total += float(np.sum(np.abs(diff[done]))) / 15
        keep = ~done
        if not np.any(keep):
            lo = lo[:0]
            break
        lo_k, mid_k, hi_k = lo[keep], mid[keep], hi[keep]
        lo = np.concatenate([lo_k, mid_k])
        hi = np.concatenate([mid_k, hi_k])
        mid = np.concatenate([0.5 * (lo_k + mid_k), 0.5 * (mid_k + hi_k)])
        fl = np.concatenate([fl[keep], fm[keep]])
        fh = np.concatenate([fm[keep], fh[keep]])
        fm = np.concatenate([flm[keep], frm[keep]])
    if lo.size:
        h = hi - lo
        total += np.sum(h / 6 * (fl + 4 * fm + fh))
        err_total = float("inf")
    return complex(total), err_total


def _safe(f: Callable) -> Callable:
    def g(u):
        with np.errstate(all="ignore"):
            return np.asarray(f(np.asarray(u, dtype=float)), dtype=complex)

    return g


# tail integrals use u = L/t on (0, 1]; the endpoint t=0 is replaced by this
# value, which drops the part of the tail beyond u = L / TAIL_T_MIN
TAIL_T_MIN = 1e-9


def integrate_line(f: Callable, cfg: QuadratureConfig = QuadratureConfig()) -> QuadratureResult:
    """Integrate a vectorized function over the whole real line.

    The core interval [-L, L] is widened by doubling until the integrand is
    below ``tail_threshold`` at both ends (or L hits ``max_halfwidth``).
    Slowly decaying integrands get the remaining tails through the map
    u = +-L/t. Raises NonIntegrable when ``u^2 |f(u)|`` is still growing at
    ``max_halfwidth``.
    """
    f = _safe(f)
    L = cfg.initial_halfwidth
    while True:
        ends = np.abs(f(np.array([-L, L])))
        if not np.all(np.isfinite(ends)):
            raise NonIntegrable(f"integrand not finite at u = +-{L:g}")
        if np.all(ends <= cfg.tail_threshold) or L >= cfg.max_halfwidth:
            break
        L = min(2 * L, cfg.max_halfwidth)
    _decay_test(f, cfg)
    core, err = adaptive_simpson(f, -L, L, cfg.abs_tol)
    tail = 0j
    ends = np.abs(f(np.array([-L, L])))
    if np.any(ends > cfg.tail_threshold):
        for sign in (-1.0, 1.0):
            def g(t, sign=sign):
                t = np.maximum(t, TAIL_T_MIN)
                return f(sign * L / t) * (L / t ** 2)

            part, perr = adaptive_simpson(_safe(g), 0.0, 1.0, cfg.abs_tol)
            tail += part
            err += perr
    total = core + tail
    if not np.isfinite(total):
        raise NonIntegrable("integral diverged")
    return QuadratureResult(total, err, L, tail)


def _decay_test(f: Callable, cfg: QuadratureConfig) -> None:
    L = cfg.max_halfwidth
    pts = np.array([-L, -L / 2, L / 2, L])
    vals = np.abs(f(pts))
    if not np.all(np.isfinite(vals)):
        raise NonIntegrable(f"integrand not finite near u = +-{L:g}")
    moment = pts ** 2 * vals
    for outer, inner in ((0, 1), (3, 2)):
        if moment[outer] > cfg.tail_threshold and moment[outer] > 1.5 * moment[inner]:
            raise NonIntegrable(
                f"integrand does not decay faster than 1/u^2 at u = {pts[outer]:g}"
            )


def _k0(a) -> RationalFn:
    if isinstance(a, LocalElement):
        return a.k0()
    return a


def tau0(a: LocalElement, hbar: float, cfg: QuadratureConfig = QuadratureConfig()) -> QuadratureResult:
    """``2 pi * integral phi(a_0) du``; only the W^0 part contributes."""
    f0 = _k0(a)
    if f0.is_zero():
        return QuadratureResult(0j, 0.0, 0.0)
    res = integrate_line(lambda u: phi_eval(f0, u, hbar), cfg)
    return res.scaled(TWO_PI)


def tau_h(a: LocalElement, S: LocalElement, hbar: float,
          cfg: QuadratureConfig = QuadratureConfig()) -> QuadratureResult:
    """``4 pi * integral phi(a_0) phi(S) du`` for a conformal factor S."""
    f0 = _k0(a)
    if f0.is_zero():
        return QuadratureResult(0j, 0.0, 0.0)
    s0 = _k0(S)
    weight = f0 * s0
    res = integrate_line(lambda u: phi_eval(weight, u, hbar), cfg)
    return res.scaled(FOUR_PI)


def gaussian_curvature(S: LocalElement) -> LocalElement:
    from .geometry import Metric, curvature_report

    return curvature_report(Metric.conformal(S)).gaussian


def total_curvature_result(S: LocalElement, hbar: float,
                           cfg: QuadratureConfig = QuadratureConfig()) -> QuadratureResult:
    if not S.is_k0():
        raise ValueError("the conformal factor must commute with U and R (no W terms)")
    K = gaussian_curvature(S)
    return tau_h(K, S, hbar, cfg)


def total_curvature(S: LocalElement, hbar: float, cfg: QuadratureConfig = QuadratureConfig()) -> float:
    res = total_curvature_result(S, hbar, cfg)
    if abs(np.imag(res.value)) >= max(cfg.abs_tol, 1e-9):
        raise NonIntegrable(f"total curvature has imaginary part {np.imag(res.value):g}")
    return float(np.real(res.value))


def non_trace_witness():
    """A pair (a, b) with tau0(ab) != tau0(ba).

    a = W + W^-1 and b = f W^-1 - f W with f = R^2 / (1 + R^2), whose image
    is a logistic curve. The W^0 part of ba vanishes, while that of ab is
    f(u + hbar) - f(u - hbar), which integrates to 2*hbar.
    """
    from .localization import CommPoly, generator, rat_inv

    W, Winv = generator("W"), generator("W^-1")
    a = W + Winv
    den = rat_inv(RationalFn(CommPoly.const(1) + CommPoly.mono(0, 2)))
    f = LocalElement.from_rational(den * RationalFn(CommPoly.mono(0, 2)))
    b = f * Winv - f * W
    return a, b
