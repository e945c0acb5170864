"""
Ideal-level operations on top of Buchberger: elimination, membership, equality and
implicitization of the reversible parametrization.

Usage:
    from groebner.ideals import implicitize, ideal_equal
    gens = implicitize(fam)                    # generators in fam.ring
    ideal_equal(gens, published, DEGREVLEX)
"""

from __future__ import annotations

import os
from typing import List, Optional, Sequence

from groebner.buchberger import buchberger, normal_form
from polyring.orders import DEGREVLEX, LEX, MonomialOrder, block_order
from polyring.polynomial import Polynomial
from polyring.variables import RingMismatchError, VariableSet
from reversibility.implicit import build_H_ideal
from system.family import SystemFamily

_INNER_ORDER = os.environ.get("PQSADDLE_INNER_ORDER", "lex")


def _default_inner_order() -> MonomialOrder:
    return MonomialOrder.parse(_INNER_ORDER or "lex")


def _common_ring(*groups: Sequence[Polynomial]) -> Optional[VariableSet]:
    ring = None
    for group in groups:
        for f in group:
            if ring is None:
                ring = f.ring
            elif f.ring != ring:
                raise RingMismatchError(f"{f.ring!r} vs {ring!r}")
    return ring


def sort_generators(polys: Sequence[Polynomial], order: MonomialOrder = DEGREVLEX) -> List[Polynomial]:
    """Primitive, nonzero, de-duplicated, sorted by (leading monomial, text)."""
    seen = {}
    for f in polys:
        if f:
            g = f.primitive(order)
            seen[g] = g
    return sorted(seen.values(), key=lambda g: (order.key(g.leading_monomial(order)), g.to_text()))


def eliminate(
    F: Sequence[Polynomial],
    elim_vars: Sequence[str],
    inner_order: Optional[MonomialOrder] = None,
    outer_order: MonomialOrder = LEX,
    workers: Optional[int] = None,
) -> List[Polynomial]:
    """
    Generators of <F> intersected with the ring of the remaining variables.
    elim_vars must be exactly the leading variables of the ring (in any order).
    Results live in the sub-ring of the remaining variables.
    """
    ring = _common_ring(F)
    if ring is None:
        return []
    inner = inner_order or _default_inner_order()
    k = len(elim_vars)
    if set(elim_vars) != set(ring.names[:k]) or len(set(elim_vars)) != k:
        raise ValueError(
            f"Elimination variables {list(elim_vars)} are not the leading block of the ring {list(ring.names)}"
        )
    if inner.kind == "block":
        raise ValueError("Inner elimination order must be lex, deglex or degrevlex")
    if k == 0:
        return list(buchberger(F, inner, workers).elements)
    order = block_order(k, outer_order, inner) if k < len(ring) else outer_order
    G = buchberger(F, order, workers)
    sub = ring.without(ring.names[:k])
    out: List[Polynomial] = []
    for g in G:
        if all(not any(m[:k]) for m in g.terms):
            out.append(g.embed(sub))
    return out


def ideal_membership(f: Polynomial, F: Sequence[Polynomial], order: MonomialOrder = DEGREVLEX) -> bool:
    _common_ring([f], F)
    if not any(F):
        return f.is_zero()
    return normal_form(f, buchberger(F, order).elements, order).is_zero()


def ideal_equal(F1: Sequence[Polynomial], F2: Sequence[Polynomial], order: MonomialOrder = DEGREVLEX) -> bool:
    _common_ring(F1, F2)
    G1 = [g for g in F1 if g]
    G2 = [g for g in F2 if g]
    if not G1 or not G2:
        return not G1 and not G2
    B1 = buchberger(G1, order)
    B2 = buchberger(G2, order)
    return all(B2.contains(f) for f in G1) and all(B1.contains(f) for f in G2)


def implicitize(
    family: SystemFamily,
    inner_order: Optional[MonomialOrder] = None,
    param_order: str = "canonical",
    workers: Optional[int] = None,
) -> List[Polynomial]:
    """Generators of the elimination ideal of H, embedded in family.ring, primitive and sorted."""
    problem = build_H_ideal(family, param_order)
    elim = eliminate(list(problem.H), problem.elimination_names, inner_order or _default_inner_order(), LEX, workers)
    return sort_generators([g.embed(problem.family.ring) for g in elim])
