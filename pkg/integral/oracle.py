"""
Independent series oracle for numeric systems (sympy).

Builds Psi by undetermined coefficients without the v-recursion: for each degree d
the unknown coefficients of Psi_d solve a dense linear system (sympy Matrix, LU)
against the known lower-degree contribution to X(Psi). Resonant monomials
(x^q y^p)^(k+1) cannot be matched; their known coefficient is g_k.

Usage:
    from integral.oracle import oracle_series, compare_with_recursion
    res = oracle_series(numeric_family, 12)
    report = compare_with_recursion(numeric_family, 12)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple, Union

import sympy as sp

from integral.first_integral import compute_first_integral
from system.family import GeneralSystem, SystemFamily

Index = Tuple[int, int]


@dataclass(frozen=True)
class OracleResult:
    degree: int
    v: Dict[Index, Fraction]
    g: Dict[int, Fraction]


@dataclass
class OracleComparison:
    degree: int
    ok: bool = True
    mismatches: List[str] = field(default_factory=list)


def _to_fraction(c) -> Fraction:
    c = sp.Rational(c)
    return Fraction(int(c.p), int(c.q))


def _as_general(system: Union[SystemFamily, GeneralSystem]) -> GeneralSystem:
    if isinstance(system, GeneralSystem):
        return system
    if not system.is_numeric():
        raise ValueError("The series oracle needs fully numeric parameters")
    return GeneralSystem.from_family(system)


def oracle_series(system: Union[SystemFamily, GeneralSystem], D: int) -> OracleResult:
    gs = _as_general(system)
    p, q = gs.resonance.p, gs.resonance.q
    if D < p + q:
        raise ValueError(f"Degree bound {D} is below p+q = {p + q}")
    x, y = sp.symbols("x y")
    A = sum((sp.Rational(c.numerator, c.denominator) * x**m * y**n for (m, n), c in gs.a.items()), sp.Integer(0))
    B = sum((sp.Rational(c.numerator, c.denominator) * x**m * y**n for (m, n), c in gs.b.items()), sp.Integer(0))

    def linear_part(f):
        return sp.expand(p * x * sp.diff(f, x) - q * y * sp.diff(f, y))

    psi = x**q * y**p
    v: Dict[Index, Fraction] = {(0, 0): Fraction(1)}
    g: Dict[int, Fraction] = {}
    for d in range(p + q + 1, D + 1):
        nonlinear = sp.expand(-x * A * sp.diff(psi, x) + y * B * sp.diff(psi, y))
        known: Dict[Index, object] = {}
        if nonlinear != 0:
            for (i, j), c in sp.Poly(nonlinear, x, y).as_dict().items():
                if i + j == d:
                    known[(i, j)] = c
        rows = [(i, d - i) for i in range(d + 1)]
        unknown = [(i, j) for (i, j) in rows if p * i != q * j]
        if unknown:
            M = sp.zeros(len(unknown), len(unknown))
            for col, (i, j) in enumerate(unknown):
                image = linear_part(x**i * y**j)
                coeffs = sp.Poly(image, x, y).as_dict() if image != 0 else {}
                for row, mon in enumerate(unknown):
                    M[row, col] = coeffs.get(mon, 0)
            rhs = sp.Matrix([-known.get(mon, 0) for mon in unknown])
            sol = M.LUsolve(rhs)
            for (i, j), c in zip(unknown, sol):
                if c != 0:
                    v[(i - q, j - p)] = _to_fraction(c)
                    psi = psi + c * x**i * y**j
        for (i, j) in rows:
            if p * i == q * j:
                k = i // q - 1
                g[k] = _to_fraction(known.get((i, j), 0))
    return OracleResult(D, v, g)


def compare_with_recursion(system: Union[SystemFamily, GeneralSystem], D: int, method=None) -> OracleComparison:
    """Exact comparison of the oracle against compute_first_integral on the same numeric system."""
    oracle = oracle_series(system, D)
    table = compute_first_integral(system, D, method)
    report = OracleComparison(D)
    rec_v = {k: c.constant_coefficient for k, c in table.v.items() if c}
    if not all(c.is_constant() for c in table.v.values()):
        raise ValueError("Recursion table is not numeric")
    for key in sorted(set(rec_v) | set(oracle.v)):
        a, b = rec_v.get(key, Fraction(0)), oracle.v.get(key, Fraction(0))
        if a != b:
            report.mismatches.append(f"v{key}: recursion={a} oracle={b}")
    for k in sorted(set(table.g) | set(oracle.g)):
        a = table.g[k].constant_coefficient if k in table.g else Fraction(0)
        b = oracle.g.get(k, Fraction(0))
        if a != b:
            report.mismatches.append(f"g_{k}: recursion={a} oracle={b}")
    report.ok = not report.mismatches
    return report
