"""Expression syntax: tokenizer, recursive-descent parser and elaboration.

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*'? factor)*
    factor := atom ('^' ['-'] INT)?
    atom   := INT ['/' INT] | 'i' | 'hbar' | 'q' | 'U' | 'R' | 'W'
            | '(' expr ')' | 'inv' '(' expr ')'

Juxtaposition is (noncommutative) multiplication. ``1/2`` is a rational
literal, not division.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Union

from .coeff import Scalar
from .errors import NotInvertible, ParseError, UnknownSymbol
from .freealg import FreeElement, Letter
from .localization import CommPoly, LocalElement, loc_inv

SYMBOLS = ("i", "hbar", "q", "U", "R", "W")


# --------------------------------------------------------------------------
# syntax tree


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*'
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int


@dataclass(frozen=True)
class Inv:
    arg: "Expr"


Expr = Union[Num, Sym, Neg, BinOp, Pow, Inv]


# --------------------------------------------------------------------------
# tokens

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


@dataclass(frozen=True)
class Token:
    kind: str  # 'int', 'name', 'op', 'end'
    text: str
    pos: int


def tokenize(text: str) -> List[Token]:
    out = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            break
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(Token("int", m.group(1), start))
        elif m.group(2):
            out.append(Token("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^/()":
                raise ParseError(f"unexpected character {ch!r}", start)
            out.append(Token("op", ch, start))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def at(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def take(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise ParseError(f"expected {text!r}", self.tok.pos)
        return self.take()

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return e

    def expr(self) -> Expr:
        if self.at("-"):
            self.take()
            e: Expr = Neg(self.term())
        else:
            e = self.term()
        while self.at("+") or self.at("-"):
            op = self.take().text
            e = BinOp(op, e, self.term())
        return e

    def starts_atom(self) -> bool:
        t = self.tok
        return t.kind in ("int", "name") or (t.kind == "op" and t.text == "(")

    def term(self) -> Expr:
        e = self.factor()
        while True:
            if self.at("*"):
                self.take()
                e = BinOp("*", e, self.factor())
            elif self.starts_atom():
                e = BinOp("*", e, self.factor())
            else:
                return e

    def factor(self) -> Expr:
        base = self.atom()
        if self.at("^"):
            self.take()
            sign = 1
            if self.at("-"):
                self.take()
                sign = -1
            if self.tok.kind != "int":
                raise ParseError("expected an integer exponent", self.tok.pos)
            return Pow(base, sign * int(self.take().text))
        return base

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "int":
            self.take()
            value = Fraction(int(t.text))
            if self.at("/"):
                self.take()
                if self.tok.kind != "int":
                    raise ParseError("expected a denominator", self.tok.pos)
                den = int(self.take().text)
                if den == 0:
                    raise ParseError("zero denominator", t.pos)
                value /= den
            return Num(value)
        if t.kind == "name":
            self.take()
            if t.text == "inv":
                self.expect("(")
                inner = self.expr()
                self.expect(")")
                return Inv(inner)
            if t.text not in SYMBOLS:
                raise UnknownSymbol(f"unknown symbol {t.text!r}", t.pos)
            return Sym(t.text)
        if self.at("("):
            self.take()
            inner = self.expr()
            self.expect(")")
            return inner
        if t.kind == "end":
            raise ParseError("unexpected end of input", t.pos)
        raise ParseError(f"unexpected {t.text!r}", t.pos)


def parse_expr(text: str) -> Expr:
    return _Parser(text).parse()


# --------------------------------------------------------------------------
# elaboration


def _symbol_power(name: str, n: int) -> LocalElement:
    if name == "q":
        return LocalElement.scalar(Scalar.q(n))
    if name == "R":
        return LocalElement.from_poly(CommPoly.mono(0, n))
    if name == "W":
        return LocalElement.from_poly(CommPoly.const(1), n)
    if name == "U":
        if n < 0:
            return loc_inv(LocalElement.from_poly(CommPoly.mono(1, 0))) ** -n
        return LocalElement.from_poly(CommPoly.mono(n, 0))
    base = _symbol(name)
    return base ** n if n >= 0 else _invert(base) ** -n


def _symbol(name: str) -> LocalElement:
    if name == "i":
        return LocalElement.scalar(Scalar.i())
    if name == "hbar":
        return LocalElement.scalar(Scalar.hbar())
    return _symbol_power(name, 1)


def _scalar_part(x: LocalElement):
    if set(x.terms) != {0}:
        return None
    f = x.terms[0]
    if not f.den.is_one() or set(f.num.terms) != {(0, 0)}:
        return None
    return f.num.terms[(0, 0)]


def _invert(x: LocalElement) -> LocalElement:
    c = _scalar_part(x)
    if c is not None and c.is_unit():
        return LocalElement.scalar(c.inverse())
    # anything else needs a positivity certificate
    return loc_inv(x)


def to_local(e: Expr) -> LocalElement:
    if isinstance(e, Num):
        return LocalElement.scalar(e.value)
    if isinstance(e, Sym):
        return _symbol(e.name)
    if isinstance(e, Neg):
        return -to_local(e.arg)
    if isinstance(e, BinOp):
        a, b = to_local(e.left), to_local(e.right)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        return a * b
    if isinstance(e, Pow):
        if isinstance(e.base, Sym):
            return _symbol_power(e.base.name, e.exp)
        base = to_local(e.base)
        return base ** e.exp if e.exp >= 0 else _invert(base) ** -e.exp
    if isinstance(e, Inv):
        return _invert(to_local(e.arg))
    raise TypeError(f"not an expression node: {e!r}")


_LETTER = {"U": Letter.U, "R": Letter.R, "W": Letter.W}
_LETTER_INV = {"R": Letter.Rinv, "W": Letter.Winv}


def to_free(e: Expr) -> FreeElement:
    """Elaborate into the free algebra, keeping the word order as written."""
    if isinstance(e, Num):
        return FreeElement({(): e.value})
    if isinstance(e, Sym):
        if e.name in _LETTER:
            return FreeElement({(_LETTER[e.name],): 1})
        if e.name == "i":
            return FreeElement({(): Scalar.i()})
        if e.name == "hbar":
            return FreeElement({(): Scalar.hbar()})
        return FreeElement({(): Scalar.q()})
    if isinstance(e, Neg):
        return -to_free(e.arg)
    if isinstance(e, BinOp):
        a, b = to_free(e.left), to_free(e.right)
        return a + b if e.op == "+" else a - b if e.op == "-" else a * b
    if isinstance(e, Pow):
        n = e.exp
        if n < 0:
            if isinstance(e.base, Sym) and e.base.name in _LETTER_INV:
                return FreeElement({(_LETTER_INV[e.base.name],) * -n: 1})
            if isinstance(e.base, Sym) and e.base.name == "q":
                return FreeElement({(): Scalar.q(n)})
            raise NotInvertible("negative powers in the free algebra are limited to R, W and q")
        out = FreeElement.one()
        base = to_free(e.base)
        for _ in range(n):
            out = out * base
        return out
    if isinstance(e, Inv):
        raise NotInvertible("inv(...) needs the localization; it is not a free-algebra element")
    raise TypeError(f"not an expression node: {e!r}")


def parse_local(text: str) -> LocalElement:
    return to_local(parse_expr(text))


def parse_free(text: str) -> FreeElement:
    return to_free(parse_expr(text))
