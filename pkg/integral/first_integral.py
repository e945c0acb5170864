"""
Formal first integral and saddle quantities of a p:-q resonant system.

Psi = x^q y^p + sum v(k1,k2) x^(k1+q) y^(k2+p) is built level by level (n = k1 + k2).
At a resonant index (p*k1 = q*k2, i.e. (k1,k2) = (qk, pk)) the coefficient cannot be
solved for; v is set to 0 there and the obstruction is recorded as g_k:

    X(Psi) = sum_k g_k (x^q y^p)^(k+1)   + terms of degree > D

Two recursions are provided:
- "general": over all (k1,k2) with k1 >= -q, k2 >= -p (works for any GeneralSystem).
- "uv":      over the grid (q t1, p t2) only; valid for uv-families, where every other
             coefficient vanishes.

Config:
- PQSADDLE_PROGRESS=1 shows tqdm bars over levels.

Usage:
    from integral.first_integral import compute_first_integral, compute_saddle_quantities
    table = compute_first_integral(fam, 9)
    gs = compute_saddle_quantities(fam, 3).g
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, List, Mapping, Optional, Tuple, Union

from tqdm import tqdm

from polyring.polynomial import Polynomial, _Accumulator
from polyring.variables import VariableSet
from system.family import GeneralSystem, SystemFamily

_PROGRESS = os.environ.get("PQSADDLE_PROGRESS", "0") == "1"

System = Union[SystemFamily, GeneralSystem]
Index = Tuple[int, int]

METHODS = ("general", "uv")


@dataclass(frozen=True)
class FirstIntegralTable:
    system: System
    degree: int
    method: str
    v: Mapping[Index, Polynomial] = field(repr=False)
    g: Mapping[int, Polynomial] = field(repr=False)

    @property
    def ring(self) -> VariableSet:
        return self.system.ring

    def get(self, k1: int, k2: int) -> Polynomial:
        """v(k1,k2); zero for every index not stored (resonant, vanishing or out of range)."""
        return self.v.get((k1, k2)) or Polynomial.zero(self.ring)

    def max_level(self) -> int:
        """Largest k whose g_k is valid at this degree bound."""
        p, q = self.system.resonance.p, self.system.resonance.q
        return self.degree // (p + q) - 1

    def xy_ring(self) -> VariableSet:
        return xy_ring(self.ring)

    def psi(self) -> Polynomial:
        """Truncated Psi as a polynomial in (x, y, parameters)."""
        p, q = self.system.resonance.p, self.system.resonance.q
        R = self.xy_ring()
        acc = _Accumulator(R)
        pad = (0,) * len(self.ring)
        for (k1, k2), c in self.v.items():
            acc.add(c.embed(R), (k1 + q, k2 + p) + pad)
        return acc.result()


@dataclass(frozen=True)
class QuantityTable:
    system: System
    K: int
    g: Tuple[Polynomial, ...]

    def evaluate(self, point: Mapping[str, object]) -> List[Fraction]:
        """Value of every g_k at a numeric parameter point; every parameter a g_k uses must be given."""
        out: List[Fraction] = []
        for k, gk in enumerate(self.g, start=1):
            r = gk.substitute(point)
            if not r.is_constant():
                missing = sorted({r.ring.names[i] for m in r.terms for i, e in enumerate(m) if e})
                raise ValueError(f"g_{k} still depends on {missing} at the given point")
            out.append(r.constant_coefficient)
        return out


def xy_ring(params: VariableSet) -> VariableSet:
    return params.extend(before=("x", "y"))


def _resolve_method(system: System, method: Optional[str]) -> str:
    if method is None:
        return "uv" if isinstance(system, SystemFamily) else "general"
    if method not in METHODS:
        raise ValueError(f"Unknown recursion method {method!r}; expected one of {METHODS}")
    if method == "uv" and not isinstance(system, SystemFamily):
        raise ValueError("The uv recursion needs a uv-family; use method='general'")
    return method


def compute_first_integral(
    system: System,
    D: int,
    method: Optional[str] = None,
    progress: Optional[bool] = None,
) -> FirstIntegralTable:
    p, q = system.resonance.p, system.resonance.q
    if D < p + q:
        raise ValueError(f"Degree bound {D} is below p+q = {p + q}")
    method = _resolve_method(system, method)
    show = _PROGRESS if progress is None else progress
    if method == "uv":
        v, g = _uv_recursion(system, D, show)  # type: ignore[arg-type]
    else:
        v, g = _general_recursion(system, D, show)
    return FirstIntegralTable(system, D, method, MappingProxyType(v), MappingProxyType(g))


def _general_recursion(system: System, D: int, show: bool):
    p, q = system.resonance.p, system.resonance.q
    ring = system.ring
    coeffs = sorted(system.bracket_terms().items())
    v: Dict[Index, Polynomial] = {(0, 0): Polynomial.one(ring)}
    g: Dict[int, Polynomial] = {}
    levels = range(1, D - p - q + 1)
    for n in tqdm(levels, desc="First integral (general)", unit="level", disable=not show):
        for k1 in range(-q, n + p + 1):
            k2 = n - k1
            acc = _Accumulator(ring)
            for (m, l), (a, b) in coeffs:
                s1, s2 = k1 - m, k2 - l
                vs = v.get((s1, s2))
                if vs is None:
                    continue
                acc.add_product(a, vs, Fraction(s1 + q))
                acc.add_product(b, vs, Fraction(-(s2 + p)))
            bracket = acc.result()
            d = p * k1 - q * k2
            if d == 0:
                g[k1 // q] = -bracket
            elif bracket:
                v[(k1, k2)] = bracket.scale(Fraction(1, d))
    return v, g


def _uv_recursion(family: SystemFamily, D: int, show: bool):
    p, q = family.p, family.q
    ring = family.ring
    # bracket monomial x^(qu) y^(pv) -> (u, v); every key is on the grid for a uv-family
    grid = sorted(((m // q, l // p), ab) for (m, l), ab in family.bracket_terms().items())
    vt: Dict[Tuple[int, int], Polynomial] = {(0, 0): Polynomial.one(ring)}
    g: Dict[int, Polynomial] = {}
    budget = D - p - q
    top = budget // min(p, q)
    for s in tqdm(range(1, top + 1), desc="First integral (uv)", unit="level", disable=not show):
        for t1 in range(s + 1):
            t2 = s - t1
            if q * t1 + p * t2 > budget:
                continue
            acc = _Accumulator(ring)
            for (u, w), (a, b) in grid:
                if u > t1 or w > t2:
                    continue
                vs = vt.get((t1 - u, t2 - w))
                if vs is None:
                    continue
                acc.add_product(a, vs, Fraction(q * (t1 - u + 1)))
                acc.add_product(b, vs, Fraction(-p * (t2 - w + 1)))
            bracket = acc.result()
            if t1 == t2:
                g[t1] = -bracket
            elif bracket:
                vt[(t1, t2)] = bracket.scale(Fraction(1, p * q * (t1 - t2)))
    v = {(q * t1, p * t2): c for (t1, t2), c in vt.items()}
    return v, g


def compute_saddle_quantities(system: System, K: int, method: Optional[str] = None) -> QuantityTable:
    if K < 1:
        raise ValueError("Number of quantities K must be >= 1")
    p, q = system.resonance.p, system.resonance.q
    table = compute_first_integral(system, (K + 1) * (p + q), method)
    return quantities_from_table(table, K)


def quantities_from_table(table: FirstIntegralTable, K: Optional[int] = None) -> QuantityTable:
    top = table.max_level()
    K = top if K is None else K
    if K > top:
        raise ValueError(f"Table of degree {table.degree} only determines g_1..g_{top}")
    zero = Polynomial.zero(table.ring)
    return QuantityTable(table.system, K, tuple(table.g.get(k, zero) for k in range(1, K + 1)))


def _bracket_polys(system: System, R: VariableSet) -> Tuple[Polynomial, Polynomial]:
    """sum a_{m,n} x^m y^n and sum b_{m,n} x^m y^n in the (x, y, parameters) ring."""
    A = _Accumulator(R)
    B = _Accumulator(R)
    pad = (0,) * (len(R) - 2)
    for (m, n), (a, b) in system.bracket_terms().items():
        A.add(a.embed(R), (m, n) + pad)
        B.add(b.embed(R), (m, n) + pad)
    return A.result(), B.result()


def apply_field(system: System, f: Polynomial) -> Polynomial:
    """X(f) = f_x * x (p - A) - f_y * y (q - B) for f in the (x, y, parameters) ring."""
    R = f.ring
    p, q = system.resonance.p, system.resonance.q
    A, B = _bracket_polys(system, R)
    x = Polynomial.variable(R, "x")
    y = Polynomial.variable(R, "y")
    return f.derivative("x") * x * (p - A) - f.derivative("y") * y * (q - B)


def residual(system: System, D: int, table: Optional[FirstIntegralTable] = None) -> Polynomial:
    """X(Psi_D) - sum_k g_k (x^q y^p)^(k+1), truncated to degree <= D in (x, y); zero when consistent."""
    if table is None:
        table = compute_first_integral(system, D)
    elif table.degree < D:
        raise ValueError(f"Table has degree {table.degree} < {D}")
    p, q = system.resonance.p, system.resonance.q
    R = table.xy_ring()
    psi = table.psi().truncate(D, ["x", "y"])
    out = apply_field(system, psi)
    pad = (0,) * len(table.ring)
    for k, gk in table.g.items():
        if (k + 1) * (p + q) <= D:
            out = out - gk.embed(R).mul_term((q * (k + 1), p * (k + 1)) + pad, 1)
    return out.truncate(D, ["x", "y"])
