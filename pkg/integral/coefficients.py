"""
Coefficient-level recursion: V(nu) is the coefficient of the parameter monomial [nu]
in v(L(nu)), and g(nu) the coefficient of [nu] in g_k when L(nu) = (qk, pk).

    V(0) = 1
    V(nu) = 0                                         if nu != 0 and p*L1 = q*L2
    V(nu) = bracket(nu) / (p*L1(nu) - q*L2(nu))       otherwise
    g(nu) = -bracket(nu)                              on resonant levels k >= 1

    bracket(nu) = sum_{j <= l} V(nu - e_j) (L1(nu - e_j) + q)
                - sum_{j >  l} V(nu - e_j) (L2(nu - e_j) + p)

Only the family's shape matters here; parameter values are ignored.
The memo table is shared and guarded per entry, so evaluate_many() may fan out
over threads and still return exactly the sequential values.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

from polyring.polynomial import Polynomial
from system.family import ExponentTuple, L_map, SystemFamily, level_of, tuples_with_L


class CoefficientRecursion:
    def __init__(self, family: SystemFamily):
        self.family = family.symbolic()
        self._memo: Dict[ExponentTuple, Fraction] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._memo)

    def _bracket(self, nu: ExponentTuple) -> Fraction:
        fam = self.family
        p, q, n = fam.p, fam.q, fam.ell
        total = Fraction(0)
        for j, e in enumerate(nu):
            if not e:
                continue
            prev = nu[:j] + (e - 1,) + nu[j + 1:]
            vp = self.V(prev)
            if not vp:
                continue
            l1, l2 = L_map(fam, prev)
            if j < n:
                total += vp * (l1 + q)
            else:
                total -= vp * (l2 + p)
        return total

    def V(self, nu: Sequence[int]) -> Fraction:
        nu = tuple(nu)
        if any(e < 0 for e in nu):
            return Fraction(0)
        with self._lock:
            hit = self._memo.get(nu)
        if hit is not None:
            return hit
        if not any(nu):
            val = Fraction(1)
        else:
            fam = self.family
            l1, l2 = L_map(fam, nu)
            d = fam.p * l1 - fam.q * l2
            val = Fraction(0) if d == 0 else self._bracket(nu) / d
        with self._lock:
            return self._memo.setdefault(nu, val)

    def g(self, nu: Sequence[int]) -> Fraction:
        nu = tuple(nu)
        if any(e < 0 for e in nu):
            return Fraction(0)
        k = level_of(self.family, nu)
        if not k:
            return Fraction(0)
        return -self._bracket(nu)

    def evaluate_many(self, nus: Iterable[Sequence[int]], workers: int = 0) -> List[Fraction]:
        nus = [tuple(nu) for nu in nus]
        if workers and workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as ex:
                return list(ex.map(self.V, nus))
        return [self.V(nu) for nu in nus]


@lru_cache(maxsize=32)
def recursion_for(family: SystemFamily) -> CoefficientRecursion:
    return CoefficientRecursion(family.symbolic())


def V_of_nu(family: SystemFamily, nu: Sequence[int]) -> Fraction:
    return recursion_for(family.symbolic()).V(nu)


def g_coeff_of_nu(family: SystemFamily, nu: Sequence[int]) -> Fraction:
    return recursion_for(family.symbolic()).g(nu)


def coefficient_polynomial(family: SystemFamily, index: Tuple[int, int]) -> Polynomial:
    """v(k1,k2) rebuilt as sum V(nu)[nu] over all nu with L(nu) = (k1,k2)."""
    rec = recursion_for(family.symbolic())
    terms = {nu: rec.V(nu) for nu in tuples_with_L(family, index)}
    return Polynomial(family.ring, terms)


def quantity_polynomial(family: SystemFamily, k: int) -> Polynomial:
    """g_k rebuilt as sum g(nu)[nu] over all nu with L(nu) = (qk, pk)."""
    rec = recursion_for(family.symbolic())
    terms = {nu: rec.g(nu) for nu in tuples_with_L(family, (family.q * k, family.p * k))}
    return Polynomial(family.ring, terms)
