"""
Tests for reversibility, conjugation, the monoid, Sibirsky generators and the theta map.
Run: pytest reversibility/test_reversibility.py -q
"""
import random
from fractions import Fraction

import pytest

from groebner.buchberger import buchberger, is_groebner
from integral.coefficients import V_of_nu, g_coeff_of_nu
from integral.first_integral import compute_first_integral, compute_saddle_quantities
from polyring.orders import DEGREVLEX
from polyring.parser import parse_poly
from polyring.polynomial import Polynomial
from polyring.variables import RingMismatchError, VariableSet
from reversibility.implicit import build_H_ideal, theta_reduce
from reversibility.criterion import is_time_reversible, symmetry_check
from reversibility.monoid import conjugate_poly, enumerate_monoid
from reversibility.sibirsky import quantity_decomposition, sibirsky_generators, sibirsky_stabilizes
from system.family import GeneralSystem, Resonance, hat, kappa, new_family, tuples_with_L

TERMS5 = [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
FAM5 = new_family(1, 2, TERMS5)
FAM23 = new_family(2, 3, TERMS5)
FAM13 = new_family(1, 3, TERMS5)


def _reversible(fam, rng):
    ratio = fam.resonance.ratio
    values = {}
    for t in fam.terms:
        a = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        values[(t.u, t.v)] = (a, ratio * a)
    return fam.with_values(values)


@pytest.fixture(scope="module")
def sib5():
    return sibirsky_generators(FAM5, 3)


# ---- reversibility criterion ----

def test_reversible_examples():
    base = {n: 0 for n in FAM5.names}
    fam = FAM5.with_values({**base, "a01": 1, "b20": 2, "a20": 3, "b01": 6})
    assert is_time_reversible(fam).reversible
    bad = fam.with_values({"b20": 1})
    report = is_time_reversible(bad)
    assert not report.reversible
    assert [v.index for v in report.violations] == [(0, 1)]
    assert report.violations[0].expected_b == 2


def test_reversible_one_one():
    fam = new_family(1, 1, [(1, 0), (0, 1), (2, 1)], {(1, 0): (3, 3), (0, 1): (-1, -1), (2, 1): (5, 5)})
    assert is_time_reversible(fam).reversible


def test_reversible_needs_numeric():
    with pytest.raises(ValueError):
        is_time_reversible(FAM5)


def test_general_system_off_pattern():
    gs = GeneralSystem(Resonance(1, 2), a={(0, 1): 1, (1, 1): 4}, b={(2, 0): 2})
    report = is_time_reversible(gs)
    assert not report.reversible
    assert [(v.kind, v.index) for v in report.violations] == [("off_pattern", (1, 1))]
    clean = GeneralSystem(Resonance(1, 2), a={(0, 1): 1}, b={(2, 0): 2})
    assert is_time_reversible(clean).reversible


# ---- conjugation and monoid ----

def test_conjugate_poly():
    R = FAM5.ring
    f = parse_poly("a01*a20", R)
    assert conjugate_poly(FAM5, f) == parse_poly("b20*b01", R)
    g = parse_poly("3*a21^2 - 1/2*a02*b40 + a40", R)
    assert conjugate_poly(FAM5, conjugate_poly(FAM5, g)) == g
    assert conjugate_poly(FAM5, Polynomial.zero(R)).is_zero()
    with pytest.raises(RingMismatchError):
        conjugate_poly(FAM5, Polynomial.zero(VariableSet(["x"])))


def test_enumerate_monoid():
    assert enumerate_monoid(FAM5, 0) == []
    level1 = enumerate_monoid(FAM5, 1)
    assert [e.nu for e in level1] == tuples_with_L(FAM5, (2, 1))
    elems = enumerate_monoid(FAM5, 3)
    nus = {e.nu for e in elems}
    assert all(e.conjugate in nus for e in elems)
    assert [e.nu for e in elems] == sorted(e.nu for e in elems)


# ---- Sibirsky generators ----

def test_sibirsky_published_binomials(sib5):
    R = FAM5.ring
    gens = set(sib5.generators)
    for text in ("2*a21 - b21", "2*a20^2*b02 - a40*b01^2", "4*a01*a20 - b01*b20", "4*a02*a40 - b02*b40"):
        assert parse_poly(text, R) in gens, text


def test_sibirsky_pairs(sib5):
    reps = [e.nu for e in sib5.entries]
    assert len(set(reps)) == len(reps)
    for e in sib5.entries:
        assert e.nu != hat(e.nu)
        assert hat(e.nu) not in reps
        lm = e.polynomial.leading_monomial(DEGREVLEX)
        assert e.polynomial.coefficient(lm) > 0
    with pytest.raises(ValueError):
        sibirsky_generators(FAM5, 0)


@pytest.mark.parametrize("fam", [FAM5, FAM23, FAM13])
def test_theta_kernel(fam):
    problem = build_H_ideal(fam)
    for gen in sibirsky_generators(fam, 3).generators:
        assert theta_reduce(problem, gen).is_zero(), gen


def test_theta_nonzero():
    problem = build_H_ideal(FAM5)
    assert theta_reduce(problem, parse_poly("a01", FAM5.ring)) == Polynomial.variable(problem.ring, "t2")
    assert not theta_reduce(problem, parse_poly("a01 - b20", FAM5.ring)).is_zero()


def test_build_H_ideal():
    problem = build_H_ideal(FAM5)
    R = problem.ring
    H = set(problem.H)
    assert parse_poly("1 - w*gamma", R) in H
    assert parse_poly("b01 - 2*t1*gamma", R) in H
    assert parse_poly("b20 - 2*t2*w", R) in H
    assert parse_poly("b21 - 2*t4", R) in H
    assert parse_poly("a21 - t4", R) in H
    assert len(problem.H) == 1 + 2 * FAM5.ell
    assert problem.zeta == (1, -1, 2, 0, -2)
    srt = build_H_ideal(FAM5, param_order="sorted")
    assert srt.ring.names[7:] == ("a01", "a02", "a20", "a21", "a40", "b01", "b02", "b20", "b21", "b40")
    with pytest.raises(ValueError):
        build_H_ideal(FAM5, param_order="random")


def test_sibirsky_stabilizes_degree5():
    assert sibirsky_stabilizes(FAM5, 3)


# ---- coefficient identities ----

@pytest.mark.parametrize("fam", [FAM5, FAM23])
def test_conjugate_identities(fam):
    for elem in enumerate_monoid(fam, 3):
        nu, nh = elem.nu, elem.conjugate
        k = kappa(fam, nu)
        assert k * V_of_nu(fam, nh) == V_of_nu(fam, nu)
        assert k * g_coeff_of_nu(fam, nh) == -g_coeff_of_nu(fam, nu)
        if nu == nh:
            assert V_of_nu(fam, nu) == 0
            assert g_coeff_of_nu(fam, nu) == 0


def test_conjugate_identity_off_monoid():
    for nu in tuples_with_L(FAM5, (4, 3)):
        assert kappa(FAM5, nu) * V_of_nu(FAM5, hat(nu)) == V_of_nu(FAM5, nu)


@pytest.mark.parametrize("fam,K", [(FAM5, 3), (FAM23, 2)])
def test_quantity_decomposition(fam, K):
    quantities = compute_saddle_quantities(fam, K).g
    sib = sibirsky_generators(fam, K)
    for k in range(1, K + 1):
        dec = quantity_decomposition(fam, k, sib)
        assert dec.total() == quantities[k - 1]


def test_quantities_in_sibirsky_ideal(sib5):
    basis = buchberger(sib5.generators, DEGREVLEX)
    assert is_groebner(basis.elements, DEGREVLEX)
    for gk in compute_saddle_quantities(FAM5, 3).g:
        assert basis.contains(gk)
    assert not basis.contains(parse_poly("a01", FAM5.ring))


# ---- reversible systems ----

def test_symmetry_examples():
    linear = new_family(1, 2, []).with_values({})
    report = symmetry_check(compute_first_integral(linear, 12))
    assert report.ok
    rev = _reversible(FAM5, random.Random(1))
    assert symmetry_check(compute_first_integral(rev, 12)).ok
    rev23 = _reversible(FAM23, random.Random(2))
    report = symmetry_check(compute_first_integral(rev23, 12))
    assert report.ok and report.checked > 0


def test_symmetry_preconditions():
    with pytest.raises(ValueError):
        symmetry_check(compute_first_integral(FAM5, 6))
    bad = FAM5.with_values({n: 1 for n in FAM5.names})
    with pytest.raises(ValueError):
        symmetry_check(compute_first_integral(bad, 6))


@pytest.mark.parametrize("seed", range(21))
def test_reversible_quantities_vanish(seed):
    fam = (FAM5, FAM23, FAM13)[seed % 3]
    rev = _reversible(fam, random.Random(seed))
    assert all(g.is_zero() for g in compute_saddle_quantities(rev, 3).g)
    assert symmetry_check(compute_first_integral(rev, 12)).ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
