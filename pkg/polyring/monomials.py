"""
Exponent-vector helpers for pqsaddle monomials.

A monomial is a plain tuple of non-negative ints; position i is the power of the
i-th variable of the owning VariableSet. Tuples are hashable and cheap to compare,
which keeps term maps and Buchberger pair queues fast.
"""

from __future__ import annotations

from typing import Tuple

Monomial = Tuple[int, ...]


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when a | b."""
    return all(x <= y for x, y in zip(a, b))


def mono_quotient(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming b | a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x >= y else y for x, y in zip(a, b))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))
