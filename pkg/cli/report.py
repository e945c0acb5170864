"""
JSON run reports (pydantic).

Every command can dump {"command", "inputs_digest", "family", "result", "millis"}.
inputs_digest is the sha256 of the input file text plus the normalized arguments, so two
runs on identical inputs produce byte-identical JSON apart from "millis".
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from pydantic import BaseModel

from polyring.orders import DEGREVLEX, MonomialOrder
from polyring.polynomial import Polynomial
from system.family import SystemFamily


class TermModel(BaseModel):
    u: int
    v: int
    a_name: str
    b_name: str
    a: Optional[str] = None
    b: Optional[str] = None


class FamilyModel(BaseModel):
    p: int
    q: int
    variables: List[str]
    terms: List[TermModel]


class MonomialTermModel(BaseModel):
    coefficient: str  # "num/den"
    powers: Dict[str, int]


class PolynomialModel(BaseModel):
    text: str
    terms: List[MonomialTermModel]


class RunReport(BaseModel):
    command: str
    inputs_digest: str
    family: Optional[FamilyModel] = None
    result: Dict[str, Any]
    millis: int


def rational_text(c: Fraction) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def polynomial_model(f: Polynomial, order: MonomialOrder = DEGREVLEX) -> PolynomialModel:
    names = f.ring.names
    terms = []
    for mono, c in f.sorted_terms(order):
        powers = {names[i]: e for i, e in enumerate(mono) if e}
        terms.append(MonomialTermModel(coefficient=rational_text(c), powers=powers))
    return PolynomialModel(text=f.to_text(order), terms=terms)


def polynomial_models(polys: Sequence[Polynomial], order: MonomialOrder = DEGREVLEX) -> List[dict]:
    return [polynomial_model(f, order).model_dump() for f in polys]


def family_model(family: SystemFamily) -> FamilyModel:
    terms = []
    for k, t in enumerate(family.terms):
        a, b = family.a_values[k], family.b_values[k]
        terms.append(
            TermModel(
                u=t.u,
                v=t.v,
                a_name=family.a_names[k],
                b_name=family.b_names[k],
                a=None if a is None else str(a),
                b=None if b is None else str(b),
            )
        )
    return FamilyModel(p=family.p, q=family.q, variables=list(family.ring.names), terms=terms)


def inputs_digest(texts: Sequence[str], args: Dict[str, Any]) -> str:
    h = hashlib.sha256()
    for text in texts:
        h.update(text.encode("utf-8"))
        h.update(b"\0")
    h.update(json.dumps(args, sort_keys=True, default=str).encode("utf-8"))
    return h.hexdigest()


def write_report(report: RunReport, path: str) -> None:
    Path(path).write_text(report.model_dump_json(indent=2) + "\n", encoding="utf-8")
