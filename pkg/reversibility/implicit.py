"""
Ideal H of the reversible parametrization and the theta map.

For each term (u_k, v_k) with zeta_k = u_k - v_k:

    a_{qu,pv} = t_k
    b_{qv,pu} = (q/p) * gamma^zeta_k * t_k        (w^(-zeta_k) when zeta_k < 0)

and 1 - w*gamma makes w the inverse of gamma. Eliminating gamma, w, t_1..t_l from H
gives the ideal of the Zariski closure of reversible systems (see groebner.ideals).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Tuple

from groebner.buchberger import normal_form
from polyring.orders import LEX
from polyring.polynomial import Polynomial
from polyring.variables import RingMismatchError, VariableSet
from system.family import SystemFamily

PARAM_ORDERS = ("canonical", "sorted")
GAMMA = "gamma"
W = "w"


@dataclass(frozen=True)
class ImplicitizationProblem:
    family: SystemFamily
    ring: VariableSet
    H: Tuple[Polynomial, ...]
    zeta: Tuple[int, ...]
    param_names: Tuple[str, ...]

    @property
    def t_names(self) -> Tuple[str, ...]:
        return tuple(f"t{k + 1}" for k in range(self.family.ell))

    @property
    def elimination_names(self) -> Tuple[str, ...]:
        return (GAMMA, W) + self.t_names

    @cached_property
    def param_ring(self) -> VariableSet:
        return VariableSet(self.param_names)

    def parametrization(self) -> Dict[str, Polynomial]:
        """Parameter name -> image polynomial in self.ring."""
        fam = self.family
        R = self.ring
        ratio = fam.resonance.ratio
        gamma = Polynomial.variable(R, GAMMA)
        w = Polynomial.variable(R, W)
        out: Dict[str, Polynomial] = {}
        for k, z in enumerate(self.zeta):
            t = Polynomial.variable(R, self.t_names[k])
            out[fam.a_names[k]] = t
            shift = gamma ** z if z >= 0 else w ** (-z)
            out[fam.b_names[k]] = (shift * t).scale(ratio)
        return out

    def unit_relation(self) -> Polynomial:
        R = self.ring
        return Polynomial.variable(R, W) * Polynomial.variable(R, GAMMA) - 1


def build_H_ideal(family: SystemFamily, param_order: str = "canonical") -> ImplicitizationProblem:
    if param_order not in PARAM_ORDERS:
        raise ValueError(f"Unknown parameter order {param_order!r}; expected one of {PARAM_ORDERS}")
    fam = family.symbolic()
    names = fam.names if param_order == "canonical" else tuple(sorted(fam.names))
    t_names = tuple(f"t{k + 1}" for k in range(fam.ell))
    ring = VariableSet((GAMMA, W) + t_names + names)
    zeta = tuple(t.zeta for t in fam.terms)
    problem = ImplicitizationProblem(fam, ring, (), zeta, names)
    images = problem.parametrization()
    H = [-problem.unit_relation()]
    for k in range(fam.ell):
        for name in (fam.a_names[k], fam.b_names[k]):
            H.append(Polynomial.variable(ring, name) - images[name])
    return ImplicitizationProblem(fam, ring, tuple(H), zeta, names)


def theta_reduce(problem: ImplicitizationProblem, f: Polynomial) -> Polynomial:
    """Image of f under the parametrization, reduced modulo w*gamma - 1."""
    if f.ring != problem.family.ring and f.ring != problem.param_ring:
        raise RingMismatchError(f"{f.ring!r} is not the parameter ring of the problem")
    image = f.substitute(problem.parametrization(), problem.ring)
    return normal_form(image, [problem.unit_relation()], LEX)
