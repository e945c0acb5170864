"""
Polynomial expression parser and printer.

Grammar (UTF-8):
    expr    := ["+"|"-"] term (("+"|"-") term)*
    term    := factor ("*" factor)*
    factor  := ("+"|"-") factor | power
    power   := atom ["^" INT]
    atom    := INT | INT "/" INT | NAME | "(" expr ")"

- NAME matches [A-Za-z][A-Za-z0-9_]* and must belong to the target ring.
- Exponents are non-negative integer literals ("x^-1" is rejected).
- Division is only allowed between two integer literals (a rational constant).
- Implicit multiplication ("2 a01", "2a01", "x(y+1)") is an error.
- U+2212 (minus sign) is accepted as "-".

Usage:
    from polyring.parser import parse_poly, format_poly
    f = parse_poly("2*a01*a20 - b01*b20", ring)
    print(format_poly(f))
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from polyring.orders import DEGREVLEX, MonomialOrder
from polyring.polynomial import Polynomial
from polyring.variables import UnknownVariableError, VariableSet

# Optional: third-party regex engine (pip install regex); stdlib re is enough for this grammar
try:
    import regex as _re2  # type: ignore
except Exception:
    _re2 = None


def _compile(pattern: str, flags: int = 0):
    if _re2 is not None:
        return _re2.compile(pattern, flags)
    return re.compile(pattern, flags)


_TOKEN_RE = _compile(
    r"(?P<ws>\s+)"
    r"|(?P<int>\d+)"
    r"|(?P<name>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^()−])"
)


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


@dataclass(frozen=True)
class Token:
    kind: str  # int | name | op | end
    text: str
    pos: int


def tokenize(text: str) -> List[Token]:
    out: List[Token] = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise PolynomialSyntaxError(f"Unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tok = m.group(kind)
            if tok == "−":
                tok = "-"
            out.append(Token(kind, tok, pos))
        pos = m.end()
    out.append(Token("end", "", n))
    return out


class _Parser:
    def __init__(self, text: str, ring: VariableSet):
        self.ring = ring
        self.toks = tokenize(text)
        self.i = 0

    @property
    def cur(self) -> Token:
        return self.toks[self.i]

    def _take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def _is_op(self, *ops: str) -> bool:
        t = self.cur
        return t.kind == "op" and t.text in ops

    def _expect_op(self, op: str) -> Token:
        if not self._is_op(op):
            raise PolynomialSyntaxError(f"Expected {op!r}", self.cur.pos)
        return self._take()

    def parse(self) -> Polynomial:
        if self.cur.kind == "end":
            raise PolynomialSyntaxError("Empty expression", 0)
        result = self.expr()
        if self.cur.kind != "end":
            t = self.cur
            if t.kind in ("int", "name") or self._is_op("("):
                raise PolynomialSyntaxError("Implicit multiplication is not allowed; use '*'", t.pos)
            raise PolynomialSyntaxError(f"Unexpected token {t.text!r}", t.pos)
        return result

    def expr(self) -> Polynomial:
        sign = 1
        if self._is_op("+", "-"):
            sign = -1 if self._take().text == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self._is_op("+", "-"):
            op = self._take().text
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while True:
            if self._is_op("*"):
                self._take()
                acc = acc * self.factor()
            elif self._is_op("/"):
                raise PolynomialSyntaxError("Division is only allowed between integer literals", self.cur.pos)
            else:
                return acc

    def factor(self) -> Polynomial:
        if self._is_op("+", "-"):
            neg = self._take().text == "-"
            f = self.factor()
            return -f if neg else f
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self._is_op("^"):
            caret = self._take()
            t = self.cur
            if t.kind == "op" and t.text in ("-", "+"):
                raise PolynomialSyntaxError("Negative or signed exponents are not allowed", t.pos)
            if t.kind != "int":
                raise PolynomialSyntaxError("Exponent must be a non-negative integer literal", t.pos if t.kind != "end" else caret.pos)
            self._take()
            base = base ** int(t.text)
            if self._is_op("^"):
                raise PolynomialSyntaxError("Chained exponents need parentheses", self.cur.pos)
        return base

    def atom(self) -> Polynomial:
        t = self.cur
        if t.kind == "int":
            self._take()
            value = Fraction(int(t.text))
            if self._is_op("/"):
                slash = self._take()
                d = self.cur
                if d.kind != "int":
                    raise PolynomialSyntaxError("Division is only allowed between integer literals", slash.pos)
                self._take()
                if int(d.text) == 0:
                    raise PolynomialSyntaxError("Division by zero", d.pos)
                value = value / int(d.text)
            self._no_juxtaposition()
            return Polynomial.constant(self.ring, value)
        if t.kind == "name":
            self._take()
            if t.text not in self.ring:
                raise UnknownVariableError(t.text, t.pos)
            self._no_juxtaposition()
            return Polynomial.variable(self.ring, t.text)
        if self._is_op("("):
            self._take()
            if self.cur.kind == "end" or self._is_op(")"):
                raise PolynomialSyntaxError("Empty parentheses", self.cur.pos)
            inner = self.expr()
            self._expect_op(")")
            self._no_juxtaposition()
            return inner
        if t.kind == "end":
            raise PolynomialSyntaxError("Unexpected end of input", t.pos)
        raise PolynomialSyntaxError(f"Unexpected token {t.text!r}", t.pos)

    def _no_juxtaposition(self) -> None:
        t = self.cur
        if t.kind in ("int", "name") or self._is_op("("):
            raise PolynomialSyntaxError("Implicit multiplication is not allowed; use '*'", t.pos)


def parse_poly(text: str, ring: VariableSet) -> Polynomial:
    return _Parser(text, ring).parse()


def format_poly(f: Polynomial, order: MonomialOrder = DEGREVLEX) -> str:
    return f.to_text(order)


def parse_poly_list(lines: List[str], ring: VariableSet) -> List[Polynomial]:
    """Parse one polynomial per entry; blank entries and '#' comments are skipped."""
    out: List[Polynomial] = []
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(parse_poly(line, ring))
    return out


def infer_ring(text: str, extra: Optional[List[str]] = None) -> VariableSet:
    """Variable set of every NAME in `text`, in order of first appearance (after `extra`)."""
    names: List[str] = list(extra or [])
    for t in tokenize(text):
        if t.kind == "name" and t.text not in names:
            names.append(t.text)
    return VariableSet(names)
