"""Free algebra on U, R, R~, W, W~ with the twelve-rule reduction system.

Words are tuples of :class:`Letter`; the semigroup order compares length
first and then lexicographically in the alphabet order U < R < R~ < W < W~.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from itertools import product as iproduct
from typing import Dict, Iterable, List, Optional, Tuple

from .coeff import ONE, Scalar, ScalarLike


class Letter(IntEnum):
    U = 0
    R = 1
    Rinv = 2
    W = 3
    Winv = 4

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self]


_SYMBOLS = {
    Letter.U: "U",
    Letter.R: "R",
    Letter.Rinv: "R^-1",
    Letter.W: "W",
    Letter.Winv: "W^-1",
}

Word = Tuple[Letter, ...]
U, R, Rt, W, Wt = Letter.U, Letter.R, Letter.Rinv, Letter.W, Letter.Winv


def word_key(w: Word):
    return (len(w), tuple(int(x) for x in w))


def word_str(w: Word) -> str:
    return "*".join(x.symbol for x in w) if w else "1"


class FreeElement:
    """Finite linear combination of words with :class:`Scalar` coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Word, ScalarLike] | None = None):
        self.terms: Dict[Word, Scalar] = {}
        for w, c in (terms or {}).items():
            c = Scalar.coerce(c)
            if c:
                self.terms[tuple(Letter(x) for x in w)] = c

    @classmethod
    def word(cls, *letters: Letter, coeff: ScalarLike = 1) -> "FreeElement":
        return cls({tuple(letters): coeff})

    @classmethod
    def one(cls) -> "FreeElement":
        return cls({(): ONE})

    def __add__(self, other: "FreeElement") -> "FreeElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            _accumulate(out, w, c)
        return FreeElement._from_clean(out)

    def __neg__(self):
        return FreeElement._from_clean({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: ScalarLike) -> "FreeElement":
        c = Scalar.coerce(c)
        return FreeElement._from_clean({w: c * v for w, v in self.terms.items() if c * v})

    def __mul__(self, other):
        if isinstance(other, FreeElement):
            return free_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    @classmethod
    def _from_clean(cls, terms: Dict[Word, Scalar]) -> "FreeElement":
        e = cls.__new__(cls)
        e.terms = {w: c for w, c in terms.items() if c}
        return e

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, FreeElement):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        return f"FreeElement({self})"

    def __str__(self):
        from .printing import format_free

        return format_free(self)


def _accumulate(out: Dict[Word, Scalar], w: Word, c: Scalar) -> None:
    s = out.get(w)
    if s is None:
        out[w] = c
    else:
        s = s + c
        if s:
            out[w] = s
        else:
            del out[w]


def free_mul(a: FreeElement, b: FreeElement) -> FreeElement:
    out: Dict[Word, Scalar] = {}
    for w1, c1 in a.terms.items():
        for w2, c2 in b.terms.items():
            _accumulate(out, w1 + w2, c1 * c2)
    return FreeElement._from_clean(out)


@dataclass(frozen=True)
class ReductionRule:
    name: str
    lhs: Word
    rhs: Tuple[Tuple[Word, Scalar], ...]

    def rhs_element(self) -> FreeElement:
        return FreeElement(dict(self.rhs))


def _rule(name, lhs, *rhs) -> ReductionRule:
    return ReductionRule(name, lhs, tuple((w, Scalar.coerce(c)) for w, c in rhs))


# exp(+-hbar) is stored as q^{+-2}
RULES: Tuple[ReductionRule, ...] = (
    _rule("sigma1", (Wt, W), ((), 1)),
    _rule("sigma2", (W, Wt), ((), 1)),
    _rule("sigma3", (Rt, R), ((), 1)),
    _rule("sigma4", (R, Rt), ((), 1)),
    _rule("sigma5", (R, U), ((U, R), 1)),
    _rule("sigma6", (Rt, U), ((U, Rt), 1)),
    _rule("sigma7", (W, R), ((R, W), Scalar.q(2))),
    _rule("sigma8", (W, Rt), ((Rt, W), Scalar.q(-2))),
    _rule("sigma9", (Wt, R), ((R, Wt), Scalar.q(-2))),
    _rule("sigma10", (Wt, Rt), ((Rt, Wt), Scalar.q(2))),
    _rule("sigma11", (W, U), ((U, W), 1), ((W,), Scalar.hbar())),
    _rule("sigma12", (Wt, U), ((U, Wt), 1), ((Wt,), -Scalar.hbar())),
)

RULE_TABLE: Dict[Word, ReductionRule] = {r.lhs: r for r in RULES}


def find_redex(w: Word, strategy: str = "leftmost") -> Optional[int]:
    positions = range(len(w) - 1)
    if strategy == "rightmost":
        positions = reversed(positions)
    elif strategy != "leftmost":
        raise ValueError(f"unknown strategy {strategy!r}")
    for i in positions:
        if (w[i], w[i + 1]) in RULE_TABLE:
            return i
    return None


def is_irreducible(w: Word) -> bool:
    return find_redex(w) is None


def normalize(
    x: FreeElement,
    strategy: str = "leftmost",
    trace: Optional[List[Tuple[Word, Tuple[Word, ...]]]] = None,
) -> FreeElement:
    """Reduce ``x`` to a combination of irreducible words.

    Works in rounds: each round rewrites one redex in every reducible word
    and merges coefficients, so shared subresults are not recomputed.
    ``trace`` (if given) collects ``(word, produced_words)`` for each step.
    """
    done: Dict[Word, Scalar] = {}
    pending: Dict[Word, Scalar] = dict(x.terms)
    while pending:
        nxt: Dict[Word, Scalar] = {}
        for w, c in pending.items():
            i = find_redex(w, strategy)
            if i is None:
                _accumulate(done, w, c)
                continue
            rule = RULE_TABLE[(w[i], w[i + 1])]
            produced = []
            for rw, rc in rule.rhs:
                nw = w[:i] + rw + w[i + 2:]
                produced.append(nw)
                _accumulate(nxt, nw, c * rc)
            if trace is not None:
                trace.append((w, tuple(produced)))
        pending = nxt
    return FreeElement._from_clean(done)


def reduce_once_at(w: Word, i: int) -> FreeElement:
    rule = RULE_TABLE[(w[i], w[i + 1])]
    return FreeElement({w[:i] + rw + w[i + 2:]: rc for rw, rc in rule.rhs})


@dataclass(frozen=True)
class Ambiguity:
    word: Word
    left_rule: str
    right_rule: str
    left_result: FreeElement
    right_result: FreeElement

    @property
    def resolvable(self) -> bool:
        return self.left_result == self.right_result

    def describe(self) -> str:
        a, b, c = (x.symbol for x in self.word)
        return f"({a}{b}){c} = {a}({b}{c})"


@dataclass(frozen=True)
class AmbiguityReport:
    ambiguities: Tuple[Ambiguity, ...]

    @property
    def count(self) -> int:
        return len(self.ambiguities)

    @property
    def all_resolvable(self) -> bool:
        return all(a.resolvable for a in self.ambiguities)

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "all_resolvable": self.all_resolvable,
            "overlaps": [
                {
                    "overlap": a.describe(),
                    "word": word_str(a.word),
                    "left_rule": a.left_rule,
                    "right_rule": a.right_rule,
                    "left_normal_form": str(a.left_result),
                    "right_normal_form": str(a.right_result),
                    "resolvable": a.resolvable,
                }
                for a in self.ambiguities
            ],
        }


def overlap_words() -> List[Word]:
    """Length-3 words XYZ where both XY and YZ are rule left-hand sides."""
    words = []
    for (x, y), (y2, z) in iproduct(RULE_TABLE, RULE_TABLE):
        if y == y2:
            words.append((x, y, z))
    return sorted(words, key=word_key)


def check_all_ambiguities() -> AmbiguityReport:
    out = []
    for w in overlap_words():
        left = normalize(reduce_once_at(w, 0))
        right = normalize(reduce_once_at(w, 1))
        out.append(
            Ambiguity(
                word=w,
                left_rule=RULE_TABLE[w[:2]].name,
                right_rule=RULE_TABLE[w[1:]].name,
                left_result=left,
                right_result=right,
            )
        )
    return AmbiguityReport(tuple(out))


def letters_of(text: Iterable[str]) -> Word:
    table = {"U": U, "R": R, "Rt": Rt, "W": W, "Wt": Wt}
    return tuple(table[t] for t in text)
