"""
Sibirsky ideal generators kappa(nu)[nu] - [hat nu] for nu in M, up to a level bound,
and the decomposition of saddle quantities over those binomials.

One generator per unordered pair {nu, hat nu} with nu != hat nu. The representative is
the member whose monomial is larger in degrevlex; generators are primitive
(integer, content 1, positive leading coefficient).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from groebner.ideals import ideal_equal
from integral.coefficients import recursion_for
from polyring.orders import DEGREVLEX
from polyring.polynomial import Polynomial
from reversibility.monoid import enumerate_monoid
from system.family import ExponentTuple, SystemFamily, hat, kappa, monomial


@dataclass(frozen=True)
class SibirskyGenerator:
    nu: ExponentTuple
    level: int
    polynomial: Polynomial

    @property
    def conjugate(self) -> ExponentTuple:
        return hat(self.nu)


@dataclass(frozen=True)
class SibirskyGeneratorSet:
    family: SystemFamily
    level_bound: int
    entries: Tuple[SibirskyGenerator, ...]

    @property
    def generators(self) -> List[Polynomial]:
        return [e.polynomial for e in self.entries]

    def at_level(self, k: int) -> List[SibirskyGenerator]:
        return [e for e in self.entries if e.level == k]

    def __len__(self) -> int:
        return len(self.entries)


def binomial(family: SystemFamily, nu: ExponentTuple) -> Polynomial:
    """kappa(nu)[nu] - [hat nu], not normalized."""
    return monomial(family, nu, kappa(family, nu)) - monomial(family, hat(nu))


def _representative(nu: ExponentTuple) -> ExponentTuple:
    h = hat(nu)
    return nu if DEGREVLEX.key(nu) > DEGREVLEX.key(h) else h


def sibirsky_generators(family: SystemFamily, K: int) -> SibirskyGeneratorSet:
    if K < 1:
        raise ValueError("Sibirsky level bound K must be >= 1")
    fam = family.symbolic()
    seen = set()
    entries: List[SibirskyGenerator] = []
    for elem in enumerate_monoid(fam, K):
        if elem.is_self_conjugate() or elem.nu in seen:
            continue
        seen.add(elem.nu)
        seen.add(elem.conjugate)
        rep = _representative(elem.nu)
        entries.append(SibirskyGenerator(rep, elem.level, binomial(fam, rep).primitive(DEGREVLEX)))
    return SibirskyGeneratorSet(fam, K, tuple(entries))


def sibirsky_stabilizes(family: SystemFamily, K: int) -> bool:
    """Whether levels K and K+1 generate the same ideal."""
    low = sibirsky_generators(family, K).generators
    high = sibirsky_generators(family, K + 1).generators
    return ideal_equal(low, high, DEGREVLEX)


@dataclass(frozen=True)
class QuantityDecomposition:
    family: SystemFamily
    level: int
    terms: Tuple[Tuple[Fraction, SibirskyGenerator], ...]

    def total(self) -> Polynomial:
        out = Polynomial.zero(self.family.ring)
        for c, gen in self.terms:
            out = out + gen.polynomial.scale(c)
        return out


def quantity_decomposition(
    family: SystemFamily, k: int, generators: Optional[SibirskyGeneratorSet] = None
) -> QuantityDecomposition:
    """
    g_k = sum over level-k pairs of c * generator, with c = g(rep) / generator[rep].

    Since kappa(nu) g(hat nu) = -g(nu), each pair contributes
    (g(nu)/kappa(nu)) * (kappa(nu)[nu] - [hat nu]).
    """
    fam = family.symbolic()
    if generators is None or generators.level_bound < k:
        generators = sibirsky_generators(fam, k)
    rec = recursion_for(fam)
    terms: List[Tuple[Fraction, SibirskyGenerator]] = []
    for gen in generators.at_level(k):
        g_rep = rec.g(gen.nu)
        if g_rep:
            terms.append((g_rep / gen.polynomial.coefficient(gen.nu), gen))
    return QuantityDecomposition(fam, k, tuple(terms))
