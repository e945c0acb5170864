"""
Monoid M of exponent tuples with L(nu) = (qk, pk), and index conjugation of polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

from polyring.polynomial import Polynomial
from polyring.variables import RingMismatchError
from system.family import ExponentTuple, SystemFamily, hat, tuples_up_to_level


@dataclass(frozen=True)
class MonoidElement:
    nu: ExponentTuple
    level: int

    @property
    def conjugate(self) -> ExponentTuple:
        return hat(self.nu)

    def is_self_conjugate(self) -> bool:
        return self.nu == hat(self.nu)


def enumerate_monoid(family: SystemFamily, K: int) -> List[MonoidElement]:
    """Every nu in M with level 1..K, lex order on nu."""
    return [MonoidElement(nu, k) for nu, k in tuples_up_to_level(family, K)]


def conjugate_poly(family: SystemFamily, f: Polynomial) -> Polynomial:
    """[nu] -> [hat nu], coefficients unchanged (conjugation is trivial over Q)."""
    if f.ring != family.ring:
        raise RingMismatchError(f"{f.ring!r} is not the parameter ring of {family.describe()}")
    return Polynomial(f.ring, {hat(m): c for m, c in f.terms.items()})
