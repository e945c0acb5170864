"""
Time-reversibility of numeric systems and the symmetry of reversible first integrals.

A uv-family member is reversible under (x, y) -> (y^(p/q), x^(q/p)) iff

    b_{qv,pu} = (q/p) * a_{qu,pv}      for every term (u, v).

A member of the general family additionally needs every off-pattern coefficient to be 0.
For reversible members v(q t1, p t2) = v(q t2, p t1) for all computed pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from integral.first_integral import FirstIntegralTable
from system.family import GeneralSystem, SystemFamily


@dataclass(frozen=True)
class Violation:
    kind: str  # "ratio" | "off_pattern"
    index: Tuple[int, int]
    a_value: Optional[Fraction]
    b_value: Optional[Fraction]
    expected_b: Optional[Fraction] = None

    def describe(self) -> str:
        if self.kind == "off_pattern":
            label = "a" if self.a_value is not None else "b"
            value = self.a_value if self.a_value is not None else self.b_value
            return f"off-pattern coefficient {label}{self.index} = {value} must be 0"
        u, v = self.index
        return f"term ({u},{v}): b = {self.b_value}, expected (q/p)*a = {self.expected_b}"


@dataclass
class ReversibilityReport:
    reversible: bool
    violations: List[Violation] = field(default_factory=list)


@dataclass
class SymmetryReport:
    ok: bool
    checked: int = 0
    failures: List[str] = field(default_factory=list)


def is_time_reversible(system: Union[SystemFamily, GeneralSystem]) -> ReversibilityReport:
    violations: List[Violation] = []
    if isinstance(system, GeneralSystem):
        family, off = system.uv_projection()
        for label, sub, value in off:
            if label == "a":
                violations.append(Violation("off_pattern", sub, value, None))
            else:
                violations.append(Violation("off_pattern", sub, None, value))
    else:
        family = system
        if not family.is_numeric():
            raise ValueError("is_time_reversible needs numeric parameter values")
    ratio = family.resonance.ratio
    for k, t in enumerate(family.terms):
        a, b = family.a_values[k], family.b_values[k]
        expected = ratio * a
        if b != expected:
            violations.append(Violation("ratio", (t.u, t.v), a, b, expected))
    return ReversibilityReport(not violations, violations)


def symmetry_check(table: FirstIntegralTable) -> SymmetryReport:
    system = table.system
    if isinstance(system, SystemFamily) and not system.is_numeric():
        raise ValueError("symmetry_check needs a numeric family")
    verdict = is_time_reversible(system)
    if not verdict.reversible:
        raise ValueError("symmetry_check needs a reversible system: " + "; ".join(v.describe() for v in verdict.violations))
    p, q = system.resonance.p, system.resonance.q
    budget = table.degree - p - q
    report = SymmetryReport(ok=True)
    for t1 in range(budget // q + 1):
        for t2 in range(t1 + 1, budget // p + 1):
            if q * t1 + p * t2 > budget or q * t2 + p * t1 > budget:
                continue
            left = table.get(q * t1, p * t2)
            right = table.get(q * t2, p * t1)
            report.checked += 1
            if left != right:
                report.failures.append(f"v({q * t1},{p * t2}) = {left} != v({q * t2},{p * t1}) = {right}")
    report.ok = not report.failures
    return report
