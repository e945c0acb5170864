"""
Ordered variable sets for pqsaddle polynomial rings.

The order of names is fixed at construction and defines exponent-vector positions.
Rings are compared by their name tuples, so two independently built sets with the
same names are the same ring.
"""

from __future__ import annotations

import re
from typing import Dict, Iterable, Iterator, Sequence, Tuple

from polyring.monomials import Monomial

_NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


class RingMismatchError(ValueError):
    """Operands live over different variable sets."""


class UnknownVariableError(ValueError):
    def __init__(self, name: str, position: int = -1):
        where = f" at position {position}" if position >= 0 else ""
        super().__init__(f"Unknown variable '{name}'{where}")
        self.name = name
        self.position = position


class VariableSet:
    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        seen: Dict[str, int] = {}
        for i, n in enumerate(names):
            if not isinstance(n, str) or not _NAME_RE.match(n):
                raise ValueError(f"Invalid variable name: {n!r}")
            if n in seen:
                raise ValueError(f"Duplicate variable name: {n!r}")
            seen[n] = i
        self.names: Tuple[str, ...] = names
        self._index = seen

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, VariableSet) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"VariableSet({', '.join(self.names)})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariableError(name) from None

    def one(self) -> Monomial:
        return (0,) * len(self.names)

    def unit(self, name: str) -> Monomial:
        i = self.index(name)
        return tuple(1 if j == i else 0 for j in range(len(self.names)))

    def extend(self, before: Sequence[str] = (), after: Sequence[str] = ()) -> "VariableSet":
        return VariableSet(tuple(before) + self.names + tuple(after))

    def without(self, names: Iterable[str]) -> "VariableSet":
        drop = set(names)
        return VariableSet(n for n in self.names if n not in drop)
