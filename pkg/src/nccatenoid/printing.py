"""Canonical text forms; every output here parses back with :mod:`nccatenoid.parser`."""
from __future__ import annotations

from typing import List, Tuple

from .coeff import Scalar, format_scalar, format_term


def _power(sym: str, n: int) -> str:
    return sym if n == 1 else f"{sym}^{n}"


def monomial_str(alpha: int, j: int, k: int) -> str:
    parts = []
    if alpha:
        parts.append(_power("U", alpha))
    if j:
        parts.append(_power("R", j))
    if k:
        parts.append(_power("W", k))
    return "*".join(parts)


def _signed_terms(pairs: List[Tuple[Scalar, str]]) -> str:
    """Join (coefficient, monomial text) pairs into ``a + b - c`` form."""
    if not pairs:
        return "0"
    out = []
    for c, mono in pairs:
        if len(c.terms) == 1:
            ((h, n), g), = c.terms.items()
            neg, body = format_term(g, h, n)
            if mono:
                if body in ("", "1"):
                    text = mono
                else:
                    text = f"{body}*{mono}"
            else:
                text = body or "1"
        else:
            neg = False
            text = f"({format_scalar(c)})*{mono}" if mono else f"({format_scalar(c)})"
        out.append((neg, text))
    s = ("-" if out[0][0] else "") + out[0][1]
    for neg, text in out[1:]:
        s += (" - " if neg else " + ") + text
    return s


def format_alg(a) -> str:
    keys = sorted(a.terms, reverse=True)
    return _signed_terms([(a.terms[m], monomial_str(*m)) for m in keys])


def format_free(x) -> str:
    from .freealg import word_key, word_str

    keys = sorted(x.terms, key=word_key, reverse=True)
    return _signed_terms([(x.terms[w], word_str(w) if w else "") for w in keys])


def format_poly(p) -> str:
    keys = sorted(p.terms, reverse=True)
    return _signed_terms([(p.terms[m], monomial_str(m[0], m[1], 0)) for m in keys])


def format_local(x) -> str:
    """``(num)*inv(F1)*inv(F2)^e*W^k`` summed over k; plain normal form without denominators."""
    alg = x.to_alg()
    if alg is not None:
        return format_alg(alg)
    parts = []
    for k in sorted(x.terms, reverse=True):
        f = x.terms[k]
        invs = [f"inv({format_poly(F)})" + (f"^{e}" if e > 1 else "")
                for F, (e, _) in sorted(f.factors.items(), key=lambda kv: str(kv[0]))]
        den = "*".join(invs)
        if f.is_poly():
            text = f"({format_poly(f.num)})"
        elif f.num.is_one():
            text = den
        else:
            text = f"({format_poly(f.num)})*{den}"
        if k:
            text += "*" + _power("W", k)
        parts.append(text)
    return " + ".join(parts) if parts else "0"
