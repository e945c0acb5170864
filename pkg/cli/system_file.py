"""
Line-oriented system description files.

    # comment
    resonance <p> <q>
    term <u> <v> [a=<rational>] [b=<rational>]

Blank lines and '#' comments are ignored; omitted values stay symbolic.
"""

from __future__ import annotations

from pathlib import Path
from typing import Dict, List, Optional, Tuple

from polyring.polynomial import as_rational
from system.family import SystemFamily, TermIndex, new_family


class SystemFileError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.message = message
        self.line = line


def _int(tok: str, what: str, line: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise SystemFileError(f"{what} must be an integer, got {tok!r}", line) from None


def parse_system_file(text: str) -> SystemFamily:
    pq: Optional[Tuple[int, int]] = None
    pq_line = 0
    terms: List[TermIndex] = []
    values: Dict[TermIndex, Tuple[object, object]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        head = toks[0].lower()
        if head == "resonance":
            if pq is not None:
                raise SystemFileError("duplicate resonance line", lineno)
            if len(toks) != 3:
                raise SystemFileError("expected 'resonance <p> <q>'", lineno)
            pq = (_int(toks[1], "p", lineno), _int(toks[2], "q", lineno))
            pq_line = lineno
            continue
        if head != "term":
            raise SystemFileError(f"unknown statement {toks[0]!r}", lineno)
        if pq is None:
            raise SystemFileError("'resonance' must come before any 'term'", lineno)
        if len(toks) < 3:
            raise SystemFileError("expected 'term <u> <v> [a=..] [b=..]'", lineno)
        try:
            t = TermIndex(_int(toks[1], "u", lineno), _int(toks[2], "v", lineno))
        except SystemFileError:
            raise
        except ValueError as e:
            raise SystemFileError(str(e), lineno) from None
        if t in values:
            raise SystemFileError(f"duplicate term ({t.u},{t.v})", lineno)
        ab: Dict[str, object] = {"a": None, "b": None}
        for tok in toks[3:]:
            key, sep, val = tok.partition("=")
            key = key.strip().lower()
            if not sep or key not in ab:
                raise SystemFileError(f"expected a=<rational> or b=<rational>, got {tok!r}", lineno)
            if ab[key] is not None:
                raise SystemFileError(f"{key} given twice", lineno)
            try:
                if any(ch in val for ch in ".eE"):
                    raise ValueError(val)
                ab[key] = as_rational(val)
            except (TypeError, ValueError):
                raise SystemFileError(f"not a rational number: {val!r}", lineno) from None
        terms.append(t)
        values[t] = (ab["a"], ab["b"])
    if pq is None:
        raise SystemFileError("missing 'resonance <p> <q>' line", 1)
    try:
        return new_family(pq[0], pq[1], terms, values)
    except ValueError as e:
        raise SystemFileError(str(e), pq_line) from None


def read_system_file(path: str) -> Tuple[SystemFamily, str]:
    text = Path(path).read_text(encoding="utf-8")
    return parse_system_file(text), text


def emit_system_file(family: SystemFamily) -> str:
    lines = [f"resonance {family.p} {family.q}"]
    for k, t in enumerate(family.terms):
        parts = [f"term {t.u} {t.v}"]
        if family.a_values[k] is not None:
            parts.append(f"a={family.a_values[k]}")
        if family.b_values[k] is not None:
            parts.append(f"b={family.b_values[k]}")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"
