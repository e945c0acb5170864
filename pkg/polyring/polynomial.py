"""
Sparse multivariate polynomials over the rationals.

- Coefficients are fractions.Fraction (always reduced, zero is 0/1).
- Terms live in a dict {exponent tuple: nonzero Fraction}; zero coefficients are never stored,
  so two polynomials are equal iff their rings and term maps are equal.
- Values are immutable once built; every operation returns a new Polynomial.
- Default printing order is degrevlex, descending.

Set PQSADDLE_DEBUG_CANONICAL=1 to assert coefficient canonicity after each arithmetic
operation (slow; meant for test runs).
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from polyring.monomials import Monomial, mono_mul
from polyring.orders import DEGREVLEX, MonomialOrder
from polyring.variables import RingMismatchError, UnknownVariableError, VariableSet

_DEBUG_CANONICAL = os.environ.get("PQSADDLE_DEBUG_CANONICAL", "0") == "1"

Scalar = Union[int, Fraction]


def as_rational(value) -> Fraction:
    """Coerce int / Fraction / 'p/q' text to Fraction. Floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"Not a rational number: {value!r}") from None
    if isinstance(value, float):
        raise TypeError("Floating-point coefficients are not supported; use Fraction or 'p/q'")
    raise TypeError(f"Unsupported coefficient type: {type(value).__name__}")


def _check_canonical(terms: Mapping[Monomial, Fraction]) -> None:
    for m, c in terms.items():
        assert c != 0, f"stored zero coefficient at {m}"
        assert c.denominator >= 1 and gcd(abs(c.numerator), c.denominator) == 1, f"non-canonical {c}"


class Polynomial:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: VariableSet, terms: Optional[Mapping[Sequence[int], object]] = None):
        n = len(ring)
        clean: Dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            m = tuple(int(e) for e in m)
            if len(m) != n:
                raise ValueError(f"Exponent vector {m} does not match ring of {n} variables")
            if any(e < 0 for e in m):
                raise ValueError(f"Negative exponent in {m}")
            c = as_rational(c)
            if c:
                clean[m] = clean.get(m, Fraction(0)) + c
                if not clean[m]:
                    del clean[m]
        self.ring = ring
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: VariableSet, terms: Dict[Monomial, Fraction]) -> "Polynomial":
        # trusted constructor: terms already canonical and owned by the result
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._hash = None
        if _DEBUG_CANONICAL:
            _check_canonical(terms)
        return obj

    # ---- constructors ----

    @classmethod
    def zero(cls, ring: VariableSet) -> "Polynomial":
        return cls._raw(ring, {})

    @classmethod
    def one(cls, ring: VariableSet) -> "Polynomial":
        return cls._raw(ring, {ring.one(): Fraction(1)})

    @classmethod
    def constant(cls, ring: VariableSet, value) -> "Polynomial":
        c = as_rational(value)
        return cls._raw(ring, {ring.one(): c} if c else {})

    @classmethod
    def variable(cls, ring: VariableSet, name: str) -> "Polynomial":
        return cls._raw(ring, {ring.unit(name): Fraction(1)})

    @classmethod
    def monomial(cls, ring: VariableSet, exps: Sequence[int], coeff=1) -> "Polynomial":
        return cls(ring, {tuple(exps): coeff})

    # ---- inspection ----

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self.terms.items())

    def support(self) -> List[Monomial]:
        return list(self.terms)

    def coefficient(self, m: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    @property
    def constant_coefficient(self) -> Fraction:
        return self.terms.get(self.ring.one(), Fraction(0))

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.one() in self.terms)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def variables(self) -> List[str]:
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return [self.ring.names[i] for i in sorted(used)]

    def sorted_terms(self, order: MonomialOrder = DEGREVLEX, descending: bool = True) -> List[Tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=descending)

    def leading_monomial(self, order: MonomialOrder = DEGREVLEX) -> Monomial:
        if not self.terms:
            raise ValueError("Zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_term(self, order: MonomialOrder = DEGREVLEX) -> Tuple[Monomial, Fraction]:
        m = self.leading_monomial(order)
        return m, self.terms[m]

    def leading_coefficient(self, order: MonomialOrder = DEGREVLEX) -> Fraction:
        return self.leading_term(order)[1]

    # ---- arithmetic ----

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.ring, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        res = dict(big)
        for m, c in small.items():
            v = res.get(m)
            if v is None:
                res[m] = c
            else:
                v += c
                if v:
                    res[m] = v
                else:
                    del res[m]
        return Polynomial._raw(self.ring, res)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        res: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                v = res.get(m)
                res[m] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial._raw(self.ring, {m: c for m, c in res.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("Polynomial division by zero")
            return self.scale(Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("Only non-negative integer powers are supported")
        result = Polynomial.one(self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        c = as_rational(c)
        if not c:
            return Polynomial.zero(self.ring)
        return Polynomial._raw(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_term(self, mono: Monomial, coeff) -> "Polynomial":
        coeff = as_rational(coeff)
        if not coeff:
            return Polynomial.zero(self.ring)
        return Polynomial._raw(self.ring, {mono_mul(m, mono): c * coeff for m, c in self.terms.items()})

    def derivative(self, name: str) -> "Polynomial":
        i = self.ring.index(name)
        res: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                res[m[:i] + (e - 1,) + m[i + 1:]] = c * e
        return Polynomial._raw(self.ring, res)

    def truncate(self, max_degree: int, names: Optional[Iterable[str]] = None) -> "Polynomial":
        """Drop every term whose degree in `names` (default: all variables) exceeds max_degree."""
        idx = [self.ring.index(n) for n in names] if names is not None else list(range(len(self.ring)))
        return Polynomial._raw(
            self.ring, {m: c for m, c in self.terms.items() if sum(m[i] for i in idx) <= max_degree}
        )

    # ---- equality / hashing ----

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_coefficient == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_constant():
                # equal to the int or Fraction it compares equal to
                self._hash = hash(self.constant_coefficient)
            else:
                self._hash = hash((self.ring.names, frozenset(self.terms.items())))
        return self._hash

    # ---- ring maps ----

    def embed(self, target: VariableSet) -> "Polynomial":
        """Rename into `target` by variable name; every variable actually used must exist there."""
        if target == self.ring:
            return self
        pos = []
        for i, name in enumerate(self.ring.names):
            pos.append(target.index(name) if name in target else -1)
        res: Dict[Monomial, Fraction] = {}
        n = len(target)
        for m, c in self.terms.items():
            out = [0] * n
            for i, e in enumerate(m):
                if e:
                    j = pos[i]
                    if j < 0:
                        raise UnknownVariableError(self.ring.names[i])
                    out[j] = e
            res[tuple(out)] = c
        return Polynomial._raw(target, res)

    def substitute(self, bindings: Mapping[str, object], target: Optional[VariableSet] = None) -> "Polynomial":
        """
        Homomorphic image under `bindings` (variable -> Polynomial or rational).
        Unbound variables pass through by name into `target` (default: this ring).
        """
        target = target or self.ring
        values: Dict[int, Polynomial] = {}
        for name, val in bindings.items():
            i = self.ring.index(name)
            if isinstance(val, Polynomial):
                if val.ring != target:
                    val = val.embed(target)
                values[i] = val
            else:
                values[i] = Polynomial.constant(target, val)
        passthrough: Dict[int, int] = {}
        for i, name in enumerate(self.ring.names):
            if i not in values and name in target:
                passthrough[i] = target.index(name)

        powers: Dict[Tuple[int, int], Polynomial] = {}

        def _pow(i: int, e: int) -> Polynomial:
            key = (i, e)
            if key not in powers:
                powers[key] = values[i] ** e
            return powers[key]

        acc = _Accumulator(target)
        n = len(target)
        for m, c in self.terms.items():
            out = [0] * n
            factor = Polynomial.constant(target, c)
            for i, e in enumerate(m):
                if not e:
                    continue
                if i in values:
                    factor = factor * _pow(i, e)
                elif i in passthrough:
                    out[passthrough[i]] = e
                else:
                    raise UnknownVariableError(self.ring.names[i])
            acc.add(factor, tuple(out))
        return acc.result()

    # ---- normalization / printing ----

    def primitive(self, order: MonomialOrder = DEGREVLEX) -> "Polynomial":
        """Integer coefficients, content 1, positive leading coefficient under `order`."""
        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        num = 0
        for c in self.terms.values():
            num = gcd(num, abs(c.numerator * (den // c.denominator)))
        factor = Fraction(den, num)
        if self.leading_coefficient(order) < 0:
            factor = -factor
        if factor == 1:
            return self
        return self.scale(factor)

    def to_text(self, order: MonomialOrder = DEGREVLEX) -> str:
        if not self.terms:
            return "0"
        parts: List[str] = []
        for idx, (m, c) in enumerate(self.sorted_terms(order)):
            mono = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(self.ring.names, m) if e
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if idx == 0:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()!r} in {','.join(self.ring.names)})"


class _Accumulator:
    """Mutable sum of (polynomial * monomial) contributions; used in hot loops."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: VariableSet):
        self.ring = ring
        self.terms: Dict[Monomial, Fraction] = {}

    def add(self, f: Polynomial, mono: Optional[Monomial] = None, scale: Fraction = Fraction(1)) -> None:
        if not scale:
            return
        terms = self.terms
        for m, c in f.terms.items():
            if mono is not None:
                m = tuple(x + y for x, y in zip(m, mono))
            v = terms.get(m)
            terms[m] = c * scale if v is None else v + c * scale

    def add_product(self, f: Polynomial, g: Polynomial, scale: Fraction = Fraction(1)) -> None:
        if not scale:
            return
        terms = self.terms
        for m1, c1 in f.terms.items():
            cc = c1 * scale
            for m2, c2 in g.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                v = terms.get(m)
                terms[m] = cc * c2 if v is None else v + cc * c2

    def result(self, scale: Fraction = Fraction(1)) -> Polynomial:
        if scale == 1:
            out = {m: c for m, c in self.terms.items() if c}
        else:
            out = {m: c * scale for m, c in self.terms.items() if c}
        return Polynomial._raw(self.ring, out)


def add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def substitute(f: Polynomial, bindings: Mapping[str, object], target: Optional[VariableSet] = None) -> Polynomial:
    return f.substitute(bindings, target)


def variables(ring: VariableSet) -> Tuple[Polynomial, ...]:
    """Generators of `ring` as polynomials, in ring order."""
    return tuple(Polynomial.variable(ring, n) for n in ring.names)
