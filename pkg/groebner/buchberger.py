"""
Buchberger's algorithm over Q.

- normal_form(): full multivariate division, divisors tried in list order.
- buchberger(): normal pair selection (smallest lcm under the active order first),
  product criterion and chain criterion; every new remainder is made primitive
  (integer coefficients, content 1, positive leading coefficient).
- reduce_basis(): the unique reduced basis, sorted by leading monomial ascending.

Parallel mode (workers > 1, or PQSADDLE_GB_WORKERS) reduces a batch of S-pairs
concurrently against the same basis snapshot and merges remainders in pair order.
The reduced basis is the same as in sequential mode.

Usage:
    from groebner.buchberger import buchberger, normal_form
    G = buchberger([f1, f2], LEX)
    normal_form(h, G.elements, LEX)
"""

from __future__ import annotations

import heapq
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from polyring.monomials import Monomial, mono_coprime, mono_divides, mono_lcm, mono_mul, mono_quotient
from polyring.orders import DEGREVLEX, MonomialOrder
from polyring.polynomial import Polynomial
from polyring.variables import RingMismatchError, VariableSet

_GB_WORKERS = os.environ.get("PQSADDLE_GB_WORKERS", "0")
_VERBOSE = os.environ.get("PQSADDLE_PROGRESS", "0") == "1"


@dataclass(frozen=True)
class GroebnerBasis:
    ring: VariableSet
    order: MonomialOrder
    elements: Tuple[Polynomial, ...]
    reduced: bool = False

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def is_zero_ideal(self) -> bool:
        return not self.elements

    def is_unit_ideal(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.elements)

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.elements, self.order)

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def to_text(self) -> List[str]:
        return [g.to_text() for g in self.elements]


def _default_workers() -> int:
    raw = (_GB_WORKERS or "").strip()
    try:
        return int(raw) if raw else 0
    except ValueError:
        raise ValueError(f"PQSADDLE_GB_WORKERS must be an integer, got {raw!r}") from None


def _check_ring(polys: Sequence[Polynomial], ring: Optional[VariableSet] = None) -> Optional[VariableSet]:
    for f in polys:
        if ring is None:
            ring = f.ring
        elif f.ring != ring:
            raise RingMismatchError(f"{f.ring!r} vs {ring!r}")
    return ring


class _Divisors:
    """Leading data of a divisor list, computed once per reduction pass."""

    __slots__ = ("polys", "lms", "lcs")

    def __init__(self, polys: Sequence[Polynomial], order: MonomialOrder):
        self.polys = [g for g in polys if g]
        self.lms = [g.leading_monomial(order) for g in self.polys]
        self.lcs = [g.terms[m] for g, m in zip(self.polys, self.lms)]


def _reduce(f: Polynomial, div: _Divisors, order: MonomialOrder) -> Polynomial:
    work: Dict[Monomial, Fraction] = dict(f.terms)
    rem: Dict[Monomial, Fraction] = {}
    key = order.key
    while work:
        m = max(work, key=key)
        c = work[m]
        for g, lm, lc in zip(div.polys, div.lms, div.lcs):
            if mono_divides(lm, m):
                shift = mono_quotient(m, lm)
                factor = c / lc
                for mg, cg in g.terms.items():
                    mm = mono_mul(mg, shift)
                    val = work.get(mm, Fraction(0)) - factor * cg
                    if val:
                        work[mm] = val
                    else:
                        work.pop(mm, None)
                break
        else:
            rem[m] = c
            del work[m]
    return Polynomial._raw(f.ring, rem)


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder = DEGREVLEX) -> Polynomial:
    _check_ring(list(G), f.ring)
    return _reduce(f, _Divisors(G, order), order)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = DEGREVLEX) -> Polynomial:
    if f.ring != g.ring:
        raise RingMismatchError(f"{f.ring!r} vs {g.ring!r}")
    mf, cf = f.leading_term(order)
    mg, cg = g.leading_term(order)
    lcm = mono_lcm(mf, mg)
    return f.mul_term(mono_quotient(lcm, mf), 1 / cf) - g.mul_term(mono_quotient(lcm, mg), 1 / cg)


class _PairQueue:
    """Pending S-pairs keyed by (order key of lcm, i, j)."""

    def __init__(self, order: MonomialOrder):
        self.order = order
        self.heap: List[Tuple[tuple, int, int]] = []
        self.pending: Set[Tuple[int, int]] = set()

    def push(self, i: int, j: int, lcm: Monomial) -> None:
        heapq.heappush(self.heap, (self.order.key(lcm), i, j))
        self.pending.add((i, j))

    def pop(self) -> Optional[Tuple[int, int]]:
        while self.heap:
            _, i, j = heapq.heappop(self.heap)
            if (i, j) in self.pending:
                self.pending.discard((i, j))
                return i, j
        return None

    def is_pending(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.pending

    def __bool__(self) -> bool:
        return bool(self.pending)


def buchberger(
    F: Sequence[Polynomial],
    order: MonomialOrder = DEGREVLEX,
    workers: Optional[int] = None,
    reduce: bool = True,
) -> GroebnerBasis:
    ring = _check_ring(list(F))
    gens = [f.primitive(order) for f in F if f]
    if not gens:
        if ring is None:
            raise ValueError("buchberger needs at least one generator to fix the ring")
        return GroebnerBasis(ring, order, (), reduced=True)
    workers = _default_workers() if workers is None else workers

    G: List[Polynomial] = []
    lms: List[Monomial] = []
    queue = _PairQueue(order)
    stats = {"pairs": 0, "product": 0, "chain": 0, "zero": 0}

    def add(h: Polynomial) -> None:
        h = h.primitive(order)
        t = len(G)
        lm = h.leading_monomial(order)
        G.append(h)
        lms.append(lm)
        for i in range(t):
            if mono_coprime(lms[i], lm):
                stats["product"] += 1
                continue
            queue.push(i, t, mono_lcm(lms[i], lm))

    for f in gens:
        r = normal_form(f, G, order) if G else f
        if r:
            add(r)

    def chain_skips(i: int, j: int) -> bool:
        lcm = mono_lcm(lms[i], lms[j])
        for k in range(len(G)):
            if k == i or k == j:
                continue
            if mono_divides(lms[k], lcm) and not queue.is_pending(i, k) and not queue.is_pending(j, k):
                return True
        return False

    def next_pairs(limit: int) -> List[Tuple[int, int]]:
        batch: List[Tuple[int, int]] = []
        while len(batch) < limit:
            pair = queue.pop()
            if pair is None:
                break
            stats["pairs"] += 1
            if chain_skips(*pair):
                stats["chain"] += 1
                continue
            batch.append(pair)
        return batch

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            while queue:
                batch = next_pairs(workers)
                if not batch:
                    break
                div = _Divisors(G, order)
                spolys = [s_polynomial(G[i], G[j], order) for i, j in batch]
                rems = list(ex.map(lambda s: _reduce(s, div, order), spolys))
                for r in rems:
                    if r:
                        # earlier merges in this batch may have grown G
                        r = normal_form(r, G, order)
                    if r:
                        add(r)
                    else:
                        stats["zero"] += 1
    else:
        while queue:
            batch = next_pairs(1)
            if not batch:
                break
            i, j = batch[0]
            r = normal_form(s_polynomial(G[i], G[j], order), G, order)
            if r:
                add(r)
            else:
                stats["zero"] += 1

    if _VERBOSE:
        print(
            f"[groebner] order={order} raw={len(G)} pairs={stats['pairs']} "
            f"product={stats['product']} chain={stats['chain']} zero={stats['zero']}",
            file=sys.stderr,
        )
    basis = GroebnerBasis(ring, order, tuple(G))
    return _reduced(basis) if reduce else basis


def is_groebner(G: Sequence[Polynomial], order: MonomialOrder = DEGREVLEX) -> bool:
    """
    Buchberger criterion: every S-pair reduces to zero.
    Pairs are visited by ascending lcm; a pair (i, j) is skipped when some lm_k divides
    lcm(i, j) and both (i, k) and (j, k) are already settled (chain criterion).
    """
    elems = [g for g in G if g]
    _check_ring(elems)
    div = _Divisors(elems, order)
    lms = div.lms
    pairs = sorted(
        ((order.key(mono_lcm(lms[i], lms[j])), i, j) for j in range(len(elems)) for i in range(j)),
        key=lambda t: t[0],
    )
    settled: Set[Tuple[int, int]] = set()
    for _, i, j in pairs:
        lcm = mono_lcm(lms[i], lms[j])
        if not mono_coprime(lms[i], lms[j]) and not any(
            k != i and k != j
            and (min(i, k), max(i, k)) in settled
            and (min(j, k), max(j, k)) in settled
            and mono_divides(lms[k], lcm)
            for k in range(len(elems))
        ):
            if _reduce(s_polynomial(elems[i], elems[j], order), div, order):
                return False
        settled.add((i, j))
    return True


def _reduced(G: GroebnerBasis) -> GroebnerBasis:
    order = G.order
    key = order.key
    elems = sorted((g for g in G.elements if g), key=lambda g: key(g.leading_monomial(order)))
    minimal: List[Polynomial] = []
    for g in elems:
        lm = g.leading_monomial(order)
        if any(mono_divides(h.leading_monomial(order), lm) for h in minimal):
            continue
        minimal.append(g)
    out: List[Polynomial] = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        r = _reduce(g, _Divisors(others, order), order) if others else g
        out.append(r.primitive(order))
    out.sort(key=lambda g: key(g.leading_monomial(order)))
    return GroebnerBasis(G.ring, order, tuple(out), reduced=True)


def reduce_basis(G: GroebnerBasis, check: bool = True) -> GroebnerBasis:
    if check and not is_groebner(G.elements, G.order):
        raise ValueError("reduce_basis needs a Groebner basis (an S-polynomial does not reduce to zero)")
    return _reduced(G)
