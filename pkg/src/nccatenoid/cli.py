"""Command-line front end.

Every command builds one report document; ``--format structured`` prints it
as JSON, the default text format prints a human-readable rendering.
Exit codes: 0 success, 1 domain error or failed check, 2 parse/usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from . import bimodule as bm
from .errors import CatenoidError, ExpressionError
from .freealg import check_all_ambiguities, normalize
from .geometry import (
    Metric,
    conformal_catenoid_metric,
    curvature_report,
    harmonic_check,
    induced_metric,
    laplacian,
)
from .integration import QuadratureConfig, tau0, tau_h, total_curvature_result
from .localization import LocalElement, loc_derive, loc_phi_eval
from .nfalg import from_free_normal
from .parser import parse_free, parse_local

SCHEMA_VERSION = "1.0"
EXIT_OK, EXIT_DOMAIN, EXIT_PARSE = 0, 1, 2


class UsageError(Exception):
    pass


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class CommandResult:
    exit_code: int
    document: Dict[str, Any]
    lines: List[str] = field(default_factory=list)
    format: Optional[str] = None

    def render(self, fmt: str) -> str:
        if fmt == "structured":
            return json.dumps(self.document, indent=2)
        return "\n".join(self.lines)


def _num(z) -> Any:
    z = complex(z)
    if z.imag == 0:
        return z.real
    return {"re": z.real, "im": z.imag}


def _cnum_str(z) -> str:
    z = complex(z)
    if abs(z.imag) < 1e-15:
        return repr(z.real)
    return f"{z.real!r} {'+' if z.imag >= 0 else '-'} {abs(z.imag)!r}i"


def _floats(text: str) -> List[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"expected a comma-separated list of numbers, got {text!r}") from exc


def _metric(spec: str) -> Metric:
    if spec == "induced":
        return induced_metric()
    if spec == "conformal-catenoid":
        return conformal_catenoid_metric()
    return Metric.conformal(parse_local(spec))


def _conformal_factor(spec: str) -> LocalElement:
    m = _metric(spec)
    if not m.is_conformal():
        raise CatenoidError(f"metric {spec!r} is not conformal (S != T)")
    return m.S


def _quad(args) -> QuadratureConfig:
    return QuadratureConfig(abs_tol=args.tol, max_halfwidth=args.max_halfwidth,
                            initial_halfwidth=min(10.0, args.max_halfwidth))


# --------------------------------------------------------------------------
# commands


def cmd_normalize(args) -> CommandResult:
    x = parse_free(args.expr)
    nf = from_free_normal(normalize(x, strategy=args.strategy))
    s = str(nf)
    return CommandResult(0, {"result": {"normal_form": s}}, [s])


def cmd_mul(args) -> CommandResult:
    s = str(parse_local(args.a) * parse_local(args.b))
    return CommandResult(0, {"result": {"product": s}}, [s])


def cmd_star(args) -> CommandResult:
    s = str(parse_local(args.expr).star())
    return CommandResult(0, {"result": {"star": s}}, [s])


def cmd_derive(args) -> CommandResult:
    s = str(loc_derive(args.op, parse_local(args.expr)))
    return CommandResult(0, {"result": {"op": args.op, "derivative": s}}, [s])


def cmd_diamond_check(args) -> CommandResult:
    rep = check_all_ambiguities()
    d = rep.to_dict()
    lines = []
    for row in d["overlaps"]:
        verdict = "resolvable" if row["resolvable"] else "NOT RESOLVABLE"
        lines.append(f"{row['overlap']:<22} {row['left_rule']:>7}: {row['left_normal_form']:<24}"
                     f" {row['right_rule']:>7}: {row['right_normal_form']:<24} {verdict}")
    lines.append(f"{rep.count} ambiguities, "
                 + ("all resolvable" if rep.all_resolvable else "some NOT resolvable"))
    return CommandResult(0 if rep.all_resolvable else EXIT_DOMAIN, {"result": d}, lines)


def cmd_curvature_report(args) -> CommandResult:
    comps = curvature_report(_metric(args.metric)).components()
    result: Dict[str, Any] = {"components": {k: str(v) for k, v in comps.items()}}
    lines = [f"{k} = {v}" for k, v in comps.items()]
    if args.grid:
        us = _floats(args.grid)
        values = {}
        for k, v in comps.items():
            if v.is_k0():
                values[k] = [_num(z) for z in np.atleast_1d(loc_phi_eval(v, np.array(us), args.hbar))]
        result["phi"] = {"hbar": args.hbar, "u": us, "values": values}
        for k, vals in values.items():
            lines.append(f"phi({k}) at hbar={args.hbar}: "
                         + ", ".join(f"u={u:g}: {v}" for u, v in zip(us, vals)))
    return CommandResult(0, {"result": result}, lines)


def cmd_harmonic_check(args) -> CommandResult:
    res = harmonic_check(_metric(args.metric))
    ok = {k: v.is_zero() for k, v in res.items()}
    lines = [f"{k} = 0: {'PASS' if passed else 'FAIL'}" for k, passed in ok.items()]
    doc = {"result": {"metric": args.metric, "checks": ok},
           "residuals": {k: str(v) for k, v in res.items()}}
    return CommandResult(0 if all(ok.values()) else EXIT_DOMAIN, doc, lines)


def cmd_laplacian(args) -> CommandResult:
    s = str(laplacian(_metric(args.metric), parse_local(args.expr)))
    return CommandResult(0, {"result": {"metric": args.metric, "laplacian": s}}, [s])


def cmd_integrate(args) -> CommandResult:
    a = parse_local(args.expr)
    cfg = _quad(args)
    if args.functional == "tau0":
        res = tau0(a, args.hbar, cfg)
    else:
        res = tau_h(a, _conformal_factor(args.metric), args.hbar, cfg)
    doc = {"result": {"functional": args.functional, "value": _num(res.value)},
           "quadrature": res.to_dict()}
    line = (f"{args.functional} = {_cnum_str(res.value)}  (error <= {res.error:.3g},"
            f" L = {res.halfwidth:g})")
    return CommandResult(0, doc, [line])


def cmd_total_curvature(args) -> CommandResult:
    S = _conformal_factor(args.metric)
    res = total_curvature_result(S, args.hbar, _quad(args))
    if abs(res.value.imag) >= max(args.tol, 1e-9):
        raise CatenoidError(f"total curvature has imaginary part {res.value.imag:g}")
    value = res.value.real
    doc = {"result": {"total_curvature": value, "over_pi": value / np.pi},
           "quadrature": res.to_dict()}
    line = f"{value!r}  ({value / np.pi:.9f} pi; error <= {res.error:.3g}, L = {res.halfwidth:g})"
    return CommandResult(0, doc, [line])


def _bimodule_params(args) -> bm.BimoduleParams:
    if args.lambda0 is not None:
        need = ("lambda1", "mu0", "mu1", "epsp")
        missing = [n for n in need if getattr(args, n) is None]
        if missing:
            raise UsageError("explicit parameters need --" + ", --".join(missing))
        left = bm.LeftParams(args.lambda0, args.lambda1, args.eps, args.r, args.hbar)
        right = bm.RightParams(args.mu0, args.mu1, args.epsp, args.rp, args.hbarp,
                               sign=args.right_sign)
        return bm.BimoduleParams(left, right)
    if args.epsp is not None:
        return bm.bimodule_params_from_display(args.hbar, args.hbarp, args.eps, args.epsp,
                                               right_sign=args.right_sign)
    return bm.solve_connection_params(args.hbar, args.hbarp, args.eps, args.r, args.rp)


def cmd_bimodule_verify(args) -> CommandResult:
    p = _bimodule_params(args)
    xis = bm.standard_test_functions()
    rep = bm.verify_structure(p, xis)
    doc: Dict[str, Any] = {"result": {"params": p.to_dict()}, "residuals": rep.to_dict()}
    lines = [f"params: {p.to_dict()}"]
    lines += [f"{s:<16} {n:<40} {v:.3e}" for s, n, v in rep.entries]
    ok = rep.passed(args.tol)
    lines.append(f"max residual {rep.max_residual:.3e} ({'PASS' if ok else 'FAIL'} at tol {args.tol:g})")
    if p.left.lambda0 != 0 and p.left.eps != 0:
        leib = bm.leibniz_residuals(p, xis)
        curv = bm.curvature_check(p, xis)
        doc["residuals"]["leibniz"] = leib.to_dict()
        doc["result"]["curvature"] = {
            "predicted": _num(curv["predicted"]),
            "measured": _num(curv["measured_mean"]),
            "max_deviation": curv["max_deviation"],
        }
        lines.append(f"connection Leibniz max residual {leib.max_residual:.3e}")
        lines.append(f"curvature measured {_cnum_str(curv['measured_mean'])},"
                     f" predicted {_cnum_str(curv['predicted'])},"
                     f" max deviation {curv['max_deviation']:.3e}")
        ok = ok and leib.passed(args.tol) and curv["max_deviation"] < args.tol
    doc["result"]["passed"] = ok
    return CommandResult(0 if ok else EXIT_DOMAIN, doc, lines)


def cmd_phi_eval(args) -> CommandResult:
    a = parse_local(args.expr)
    if not a.is_k0():
        raise CatenoidError("phi-eval needs an element without W terms")
    us = _floats(args.u)
    vals = np.atleast_1d(loc_phi_eval(a, np.array(us), args.hbar))
    doc = {"result": {"hbar": args.hbar, "u": us, "values": [_num(v) for v in vals]}}
    lines = [f"phi({u:g}) = {_cnum_str(v)}" for u, v in zip(us, vals)]
    return CommandResult(0, doc, lines)


# --------------------------------------------------------------------------
# argument parsing


def _globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--hbar", type=float, default=d(1.0),
                   help="numeric value of hbar for evaluation and integration (default 1)")
    p.add_argument("--format", choices=("text", "structured"), default=d("text"))
    p.add_argument("--tol", type=float, default=d(1e-9),
                   help="quadrature tolerance and pass threshold (default 1e-9)")
    p.add_argument("--max-halfwidth", type=float, default=d(160.0),
                   help="largest core interval half-width for quadrature (default 160)")


def build_parser() -> argparse.ArgumentParser:
    top = _ArgParser(prog="nccatenoid", description="noncommutative catenoid algebra toolkit")
    _globals(top, suppress=False)
    common = _ArgParser(add_help=False)
    _globals(common, suppress=True)
    sub = top.add_subparsers(dest="command", required=True, parser_class=_ArgParser)

    def add(name, fn, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("normalize", cmd_normalize, "normal form via the rewrite system")
    sp.add_argument("expr")
    sp.add_argument("--strategy", choices=("leftmost", "rightmost"), default="leftmost")
    sp = add("mul", cmd_mul, "product of two expressions")
    sp.add_argument("a")
    sp.add_argument("b")
    add("star", cmd_star, "involution").add_argument("expr")
    sp = add("derive", cmd_derive, "apply a derivation")
    sp.add_argument("--op", choices=("du", "dv", "d", "dbar"), required=True)
    sp.add_argument("expr")
    add("diamond-check", cmd_diamond_check, "check every overlap ambiguity")
    metric_help = "induced, conformal-catenoid, or an expression for a conformal factor S"
    sp = add("curvature-report", cmd_curvature_report, "curvature of a metric")
    sp.add_argument("--metric", default="induced", help=metric_help)
    sp.add_argument("--grid", help="comma-separated u values for phi-evaluation")
    add("harmonic-check", cmd_harmonic_check, "Laplacian of the embedding coordinates") \
        .add_argument("--metric", default="induced", help=metric_help)
    sp = add("laplacian", cmd_laplacian, "Laplace-Beltrami operator")
    sp.add_argument("expr")
    sp.add_argument("--metric", default="induced", help=metric_help)
    sp = add("integrate", cmd_integrate, "tau0 or tau_h of an expression")
    sp.add_argument("functional", choices=("tau0", "tauh"))
    sp.add_argument("expr")
    sp.add_argument("--metric", default="conformal-catenoid", help="conformal factor for tauh")
    sp = add("total-curvature", cmd_total_curvature, "tau_h of the Gaussian curvature")
    sp.add_argument("--metric", default="conformal-catenoid", help=metric_help)
    sp = add("bimodule-verify", cmd_bimodule_verify, "check a module/bimodule structure")
    sp.add_argument("--hbarp", type=float, default=2.0)
    sp.add_argument("--eps", type=float, default=1.0)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--rp", type=int, default=2)
    sp.add_argument("--epsp", type=float, help="use the r = r' = 1 family with this eps'")
    sp.add_argument("--right-sign", type=int, choices=(1, -1), default=1)
    for name in ("lambda0", "lambda1", "mu0", "mu1"):
        sp.add_argument(f"--{name}", type=float, help="explicit parameter")
    sp = add("phi-eval", cmd_phi_eval, "evaluate the classical image of an element")
    sp.add_argument("expr")
    sp.add_argument("--u", required=True, help="comma-separated u values")
    return top


def _inputs(args) -> Dict[str, Any]:
    return {k: v for k, v in vars(args).items() if k not in ("fn", "command", "format")}


def run_command(argv: Sequence[str]) -> CommandResult:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except UsageError as exc:
        return CommandResult(EXIT_PARSE, _error_doc(None, "usage_error", str(exc)),
                             [f"error: {exc}"])
    head = {"schema_version": SCHEMA_VERSION, "command": args.command, "inputs": _inputs(args)}
    try:
        res = args.fn(args)
    except ExpressionError as exc:
        res = CommandResult(EXIT_PARSE, _error_doc(exc.position, exc.code, str(exc)),
                            [f"error: {exc}"])
    except UsageError as exc:
        res = CommandResult(EXIT_PARSE, _error_doc(None, "usage_error", str(exc)),
                            [f"error: {exc}"])
    except CatenoidError as exc:
        res = CommandResult(EXIT_DOMAIN, _error_doc(None, exc.code, str(exc)), [f"error: {exc}"])
    except ValueError as exc:
        res = CommandResult(EXIT_DOMAIN, _error_doc(None, "invalid_input", str(exc)),
                            [f"error: {exc}"])
    res.document = {**head, **res.document}
    res.format = args.format
    return res


def _error_doc(position: Optional[int], code: str, message: str) -> Dict[str, Any]:
    err: Dict[str, Any] = {"code": code, "message": message}
    if position is not None:
        err["position"] = position
    return {"schema_version": SCHEMA_VERSION, "error": err}


def _wanted_format(argv: Sequence[str]) -> str:
    argv = list(argv)
    for i, a in enumerate(argv):
        if a == "--format" and i + 1 < len(argv):
            return argv[i + 1]
        if a.startswith("--format="):
            return a.split("=", 1)[1]
    return "text"


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if any(a in ("-h", "--help") for a in argv):
        build_parser().parse_args(list(argv))  # prints help, exits 0
    res = run_command(argv)
    fmt = res.format or _wanted_format(argv)
    text = res.render(fmt)
    stream = sys.stderr if res.exit_code and fmt == "text" and "error" in res.document else sys.stdout
    print(text, file=stream)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
