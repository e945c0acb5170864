"""
Monomial orderings: lex, deglex, degrevlex and two-block elimination orders.

Each order is reduced to a sort key on exponent tuples, so "m1 > m2" is just
"key(m1) > key(m2)". Block orders compare the leading `elim` exponents with the
outer order first and fall back to the inner order on the rest.

Order specs accepted by MonomialOrder.parse():
    lex | deglex | degrevlex            (aliases: grlex, grevlex)
    block(K,OUTER,INNER)                e.g. block(7,lex,degrevlex)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import IntEnum
from typing import Optional, Tuple

from polyring.monomials import Monomial

_KINDS = ("lex", "deglex", "degrevlex", "block")
_ALIASES = {"grlex": "deglex", "grevlex": "degrevlex", "revlex": "degrevlex"}
_BLOCK_RE = re.compile(r"^block\(\s*(\d+)\s*,\s*(\w+)\s*,\s*(\w+)\s*\)$")


class Comparison(IntEnum):
    LT = -1
    EQ = 0
    GT = 1


@dataclass(frozen=True)
class MonomialOrder:
    kind: str
    elim: int = 0
    outer: Optional["MonomialOrder"] = None
    inner: Optional["MonomialOrder"] = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"Unknown monomial order kind: {self.kind!r}")
        if self.kind == "block":
            if self.elim < 1:
                raise ValueError("Block order needs a positive elimination count")
            if self.outer is None or self.inner is None:
                raise ValueError("Block order needs outer and inner orders")
            if self.outer.kind == "block" or self.inner.kind == "block":
                raise ValueError("Nested block orders are not supported")

    def key(self, m: Monomial) -> Tuple:
        kind = self.kind
        if kind == "lex":
            return m
        if kind == "deglex":
            return (sum(m), m)
        if kind == "degrevlex":
            return (sum(m), tuple(-e for e in reversed(m)))
        k = self.elim
        return (self.outer.key(m[:k]), self.inner.key(m[k:]))

    def __str__(self) -> str:
        if self.kind == "block":
            return f"block({self.elim},{self.outer},{self.inner})"
        return self.kind

    @classmethod
    def parse(cls, spec: str) -> "MonomialOrder":
        s = (spec or "").strip().lower()
        s = _ALIASES.get(s, s)
        if s in ("lex", "deglex", "degrevlex"):
            return cls(s)
        m = _BLOCK_RE.match(s)
        if m:
            return block_order(int(m.group(1)), cls.parse(m.group(2)), cls.parse(m.group(3)))
        raise ValueError(f"Unknown monomial order spec: {spec!r}")


LEX = MonomialOrder("lex")
DEGLEX = MonomialOrder("deglex")
DEGREVLEX = MonomialOrder("degrevlex")


def block_order(elim: int, outer: MonomialOrder = LEX, inner: MonomialOrder = LEX) -> MonomialOrder:
    return MonomialOrder("block", elim=elim, outer=outer, inner=inner)


def compare(order: MonomialOrder, m1: Monomial, m2: Monomial) -> Comparison:
    if len(m1) != len(m2):
        raise ValueError(f"Monomial length mismatch: {len(m1)} vs {len(m2)}")
    k1, k2 = order.key(m1), order.key(m2)
    if k1 == k2:
        return Comparison.EQ
    return Comparison.GT if k1 > k2 else Comparison.LT
