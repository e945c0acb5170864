"""
p:-q resonant system families.

Model:
    x' =  x (p - sum a_{m,n} x^m y^n)
    y' = -y (q - sum b_{m,n} x^m y^n)

- SystemFamily: the uv-family, one term (u,v) per index with a-parameter a_{qu,pv}
  and conjugate b-parameter b_{qv,pu}. Values may be symbolic (None) or rational.
- GeneralSystem: arbitrary non-negative subscripts with rational coefficients only;
  projected to a SystemFamily by uv_projection().

Index set S is kept in canonical order: ascending u+v, ties by descending u.
Parameter ring order is a_1..a_l, b_l..b_1, so variable k and variable 2l-k+1 are
conjugates and an exponent tuple nu is exactly the exponent vector of [nu].

Usage:
    from system.family import new_family
    fam = new_family(1, 2, [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)])
    fam.ring.names  # ('a20','a01','a40','a21','a02','b40','b21','b02','b20','b01')
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from polyring.polynomial import Polynomial, as_rational
from polyring.variables import RingMismatchError, VariableSet

ExponentTuple = Tuple[int, ...]
Value = Optional[Fraction]


@dataclass(frozen=True)
class Resonance:
    p: int
    q: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not isinstance(self.q, int) or self.p < 1 or self.q < 1:
            raise ValueError(f"Resonance needs positive integers, got p={self.p!r}, q={self.q!r}")
        if gcd(self.p, self.q) != 1:
            raise ValueError(f"p and q must be coprime, got p={self.p}, q={self.q}")

    @property
    def ratio(self) -> Fraction:
        """q/p"""
        return Fraction(self.q, self.p)

    def __str__(self) -> str:
        return f"{self.p}:-{self.q}"


@dataclass(frozen=True, order=True)
class TermIndex:
    u: int
    v: int

    def __post_init__(self):
        if self.u < 0 or self.v < 0:
            raise ValueError(f"Term index must be non-negative, got ({self.u},{self.v})")
        if self.u + self.v < 1:
            raise ValueError("Term index needs u+v >= 1")

    @property
    def zeta(self) -> int:
        return self.u - self.v

    def a_subscript(self, res: Resonance) -> Tuple[int, int]:
        return (res.q * self.u, res.p * self.v)

    def b_subscript(self, res: Resonance) -> Tuple[int, int]:
        return (res.q * self.v, res.p * self.u)


def param_name(prefix: str, sub: Tuple[int, int]) -> str:
    m, n = sub
    if m < 10 and n < 10:
        return f"{prefix}{m}{n}"
    return f"{prefix}_{m}_{n}"


def canonical_key(t: TermIndex) -> Tuple[int, int]:
    return (t.u + t.v, -t.u)


@dataclass(frozen=True)
class SystemFamily:
    resonance: Resonance
    terms: Tuple[TermIndex, ...]
    a_values: Tuple[Value, ...] = ()
    b_values: Tuple[Value, ...] = ()

    def __post_init__(self):
        n = len(self.terms)
        if not self.a_values:
            object.__setattr__(self, "a_values", (None,) * n)
        if not self.b_values:
            object.__setattr__(self, "b_values", (None,) * n)
        if len(self.a_values) != n or len(self.b_values) != n:
            raise ValueError("Value tuples must match the number of terms")
        if len(set(self.terms)) != n:
            raise ValueError("Duplicate term index")
        if list(self.terms) != sorted(self.terms, key=canonical_key):
            raise ValueError("Terms are not in canonical order; build families with new_family()")

    # ---- shape ----

    @property
    def p(self) -> int:
        return self.resonance.p

    @property
    def q(self) -> int:
        return self.resonance.q

    @property
    def ell(self) -> int:
        return len(self.terms)

    @cached_property
    def a_names(self) -> Tuple[str, ...]:
        return tuple(param_name("a", t.a_subscript(self.resonance)) for t in self.terms)

    @cached_property
    def b_names(self) -> Tuple[str, ...]:
        return tuple(param_name("b", t.b_subscript(self.resonance)) for t in self.terms)

    @cached_property
    def names(self) -> Tuple[str, ...]:
        return self.a_names + tuple(reversed(self.b_names))

    @cached_property
    def ring(self) -> VariableSet:
        return VariableSet(self.names)

    @cached_property
    def weights(self) -> Tuple[Tuple[int, int], ...]:
        """L-contribution of each ring variable, in ring order."""
        res = self.resonance
        a_w = [t.a_subscript(res) for t in self.terms]
        b_w = [t.b_subscript(res) for t in reversed(self.terms)]
        return tuple(a_w + b_w)

    # ---- values ----

    def is_numeric(self) -> bool:
        return all(v is not None for v in self.a_values + self.b_values)

    def is_symbolic(self) -> bool:
        return all(v is None for v in self.a_values + self.b_values)

    def a_poly(self, k: int) -> Polynomial:
        val = self.a_values[k]
        if val is None:
            return Polynomial.variable(self.ring, self.a_names[k])
        return Polynomial.constant(self.ring, val)

    def b_poly(self, k: int) -> Polynomial:
        val = self.b_values[k]
        if val is None:
            return Polynomial.variable(self.ring, self.b_names[k])
        return Polynomial.constant(self.ring, val)

    def bracket_terms(self) -> Dict[Tuple[int, int], Tuple[Polynomial, Polynomial]]:
        """Coefficients (a_{m,n}, b_{m,n}) of x^m y^n inside the brackets; absent entries are zero."""
        zero = Polynomial.zero(self.ring)
        out: Dict[Tuple[int, int], List[Polynomial]] = {}
        for k, t in enumerate(self.terms):
            out.setdefault(t.a_subscript(self.resonance), [zero, zero])[0] = self.a_poly(k)
            out.setdefault(t.b_subscript(self.resonance), [zero, zero])[1] = self.b_poly(k)
        return {key: (ab[0], ab[1]) for key, ab in out.items()}

    def a_map(self) -> Dict[str, Value]:
        return dict(zip(self.a_names, self.a_values))

    def b_map(self) -> Dict[str, Value]:
        return dict(zip(self.b_names, self.b_values))

    def numeric_point(self) -> Dict[str, Fraction]:
        """Parameter name -> value, for evaluating symbolic polynomials at this family."""
        if not self.is_numeric():
            raise ValueError("Family has symbolic parameters")
        point = self.a_map()
        point.update(self.b_map())
        return point  # type: ignore[return-value]

    def with_values(self, values: Mapping[object, object]) -> "SystemFamily":
        """
        Copy with parameter values set. Keys are parameter names ('a20', 'b01') or
        term tuples (u, v) mapped to an (a, b) pair; None keeps a parameter symbolic.
        """
        a_vals = list(self.a_values)
        b_vals = list(self.b_values)
        pos = {t: k for k, t in enumerate(self.terms)}
        a_pos = {n: k for k, n in enumerate(self.a_names)}
        b_pos = {n: k for k, n in enumerate(self.b_names)}
        for key, val in values.items():
            if isinstance(key, str):
                if key in a_pos:
                    a_vals[a_pos[key]] = None if val is None else as_rational(val)
                elif key in b_pos:
                    b_vals[b_pos[key]] = None if val is None else as_rational(val)
                else:
                    raise ValueError(f"Unknown parameter {key!r}")
                continue
            t = key if isinstance(key, TermIndex) else TermIndex(*key)
            if t not in pos:
                raise ValueError(f"Term ({t.u},{t.v}) is not in the family")
            av, bv = val  # type: ignore[misc]
            a_vals[pos[t]] = None if av is None else as_rational(av)
            b_vals[pos[t]] = None if bv is None else as_rational(bv)
        return replace(self, a_values=tuple(a_vals), b_values=tuple(b_vals))

    def symbolic(self) -> "SystemFamily":
        return replace(self, a_values=(), b_values=())

    def describe(self) -> str:
        parts = []
        for k, t in enumerate(self.terms):
            a, b = self.a_values[k], self.b_values[k]
            a_txt = self.a_names[k] if a is None else f"{self.a_names[k]}={a}"
            b_txt = self.b_names[k] if b is None else f"{self.b_names[k]}={b}"
            parts.append(f"({t.u},{t.v}):{a_txt},{b_txt}")
        return f"{self.resonance} [{'; '.join(parts)}]"


def new_family(
    p: int,
    q: int,
    terms: Iterable[Union[TermIndex, Sequence[int]]],
    values: Optional[Mapping[object, object]] = None,
) -> SystemFamily:
    res = Resonance(p, q)
    idx: List[TermIndex] = []
    for t in terms:
        ti = t if isinstance(t, TermIndex) else TermIndex(int(t[0]), int(t[1]))
        if ti in idx:
            raise ValueError(f"Duplicate term index ({ti.u},{ti.v})")
        idx.append(ti)
    idx.sort(key=canonical_key)
    fam = SystemFamily(res, tuple(idx))
    if values:
        fam = fam.with_values(values)
    return fam


@dataclass(frozen=True)
class GeneralSystem:
    """Numeric member of the general family; a/b map (m,n) -> coefficient of x^m y^n."""

    resonance: Resonance
    a: Mapping[Tuple[int, int], Fraction] = field(default_factory=dict)
    b: Mapping[Tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        for label, coeffs in (("a", self.a), ("b", self.b)):
            clean: Dict[Tuple[int, int], Fraction] = {}
            for (m, n), c in coeffs.items():
                if m < 0 or n < 0 or m + n < 1:
                    raise ValueError(f"Subscript {label}_{m},{n} out of range")
                c = as_rational(c)
                if c:
                    clean[(int(m), int(n))] = c
            object.__setattr__(self, label, clean)

    @cached_property
    def ring(self) -> VariableSet:
        return VariableSet(())

    def bracket_terms(self) -> Dict[Tuple[int, int], Tuple[Polynomial, Polynomial]]:
        out = {}
        for key in set(self.a) | set(self.b):
            out[key] = (
                Polynomial.constant(self.ring, self.a.get(key, 0)),
                Polynomial.constant(self.ring, self.b.get(key, 0)),
            )
        return out

    def uv_projection(self) -> Tuple[SystemFamily, List[Tuple[str, Tuple[int, int], Fraction]]]:
        """Numeric uv-family of the on-pattern coefficients, plus the nonzero off-pattern ones."""
        p, q = self.resonance.p, self.resonance.q
        vals: Dict[TermIndex, List[Fraction]] = {}
        off: List[Tuple[str, Tuple[int, int], Fraction]] = []
        for (m, n), c in sorted(self.a.items()):
            if m % q == 0 and n % p == 0:
                vals.setdefault(TermIndex(m // q, n // p), [Fraction(0), Fraction(0)])[0] = c
            else:
                off.append(("a", (m, n), c))
        for (m, n), c in sorted(self.b.items()):
            if m % q == 0 and n % p == 0:
                vals.setdefault(TermIndex(n // p, m // q), [Fraction(0), Fraction(0)])[1] = c
            else:
                off.append(("b", (m, n), c))
        fam = new_family(p, q, vals.keys(), {t: tuple(ab) for t, ab in vals.items()})
        return fam, off

    @classmethod
    def from_family(cls, family: SystemFamily) -> "GeneralSystem":
        if not family.is_numeric():
            raise ValueError("Family has symbolic parameters")
        a = {t.a_subscript(family.resonance): family.a_values[k] for k, t in enumerate(family.terms)}
        b = {t.b_subscript(family.resonance): family.b_values[k] for k, t in enumerate(family.terms)}
        return cls(family.resonance, a, b)


# ---- exponent tuples ----

def _check_length(family: SystemFamily, nu: Sequence[int]) -> None:
    if len(nu) != 2 * family.ell:
        raise ValueError(f"Exponent tuple of length {len(nu)} does not match 2l = {2 * family.ell}")


def L_map(family: SystemFamily, nu: Sequence[int]) -> Tuple[int, int]:
    _check_length(family, nu)
    l1 = l2 = 0
    for e, (w1, w2) in zip(nu, family.weights):
        if e:
            l1 += e * w1
            l2 += e * w2
    return l1, l2


def hat(nu: Sequence[int]) -> ExponentTuple:
    return tuple(reversed(tuple(nu)))


def kappa(family: SystemFamily, nu: Sequence[int]) -> Fraction:
    n = family.ell
    diff = sum(nu[:n]) - sum(nu[n:])
    return family.resonance.ratio ** diff


def level_of(family: SystemFamily, nu: Sequence[int]) -> Optional[int]:
    """k when L(nu) = (qk, pk), else None."""
    l1, l2 = L_map(family, nu)
    p, q = family.p, family.q
    if l1 % q or l2 % p or l1 // q != l2 // p:
        return None
    return l1 // q


def monomial(family: SystemFamily, nu: Sequence[int], coeff=1) -> Polynomial:
    _check_length(family, nu)
    return Polynomial.monomial(family.ring, nu, coeff)


def _bounded_tuples(weights: Sequence[Tuple[int, int]], b1: int, b2: int) -> Iterator[ExponentTuple]:
    """All nu with L1 <= b1, L2 <= b2, in lex order on nu."""
    n = len(weights)
    cur = [0] * n

    def rec(i: int, r1: int, r2: int) -> Iterator[ExponentTuple]:
        if i == n:
            yield tuple(cur)
            return
        w1, w2 = weights[i]
        e = 0
        while e * w1 <= r1 and e * w2 <= r2:
            cur[i] = e
            yield from rec(i + 1, r1 - e * w1, r2 - e * w2)
            e += 1
        cur[i] = 0

    yield from rec(0, b1, b2)


def tuples_with_L(family: SystemFamily, target: Tuple[int, int]) -> List[ExponentTuple]:
    j, k = target
    if j < 0 or k < 0:
        return []
    return [nu for nu in _bounded_tuples(family.weights, j, k) if L_map(family, nu) == (j, k)]


def tuples_up_to_level(family: SystemFamily, K: int) -> List[Tuple[ExponentTuple, int]]:
    """(nu, k) for every nu with L(nu) = (qk, pk), 1 <= k <= K; lex order on nu."""
    if K < 1:
        return []
    out = []
    for nu in _bounded_tuples(family.weights, family.q * K, family.p * K):
        k = level_of(family, nu)
        if k is not None and k >= 1:
            out.append((nu, k))
    return out


def check_jk_homogeneous(family: SystemFamily, f: Polynomial, jk: Tuple[int, int]) -> bool:
    if f.ring != family.ring:
        raise RingMismatchError(f"Polynomial ring {f.ring!r} is not the parameter ring of {family.describe()}")
    return all(L_map(family, m) == tuple(jk) for m in f.terms)


def scale_parameters(family: SystemFamily, alpha) -> SystemFamily:
    """Parameters after x -> alpha x, y -> y / alpha."""
    alpha = as_rational(alpha)
    if alpha == 0:
        raise ValueError("Scaling factor must be nonzero")
    if not family.is_numeric():
        raise ValueError("scale_parameters needs a fully numeric family")
    res = family.resonance
    a_vals, b_vals = [], []
    for k, t in enumerate(family.terms):
        qa, pa = t.a_subscript(res)
        qb, pb = t.b_subscript(res)
        a_vals.append(alpha ** (pa - qa) * family.a_values[k])
        b_vals.append(alpha ** (pb - qb) * family.b_values[k])
    return replace(family, a_values=tuple(a_vals), b_values=tuple(b_vals))
