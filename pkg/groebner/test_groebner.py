"""
Tests for the Buchberger engine and ideal operations, including the degree-5 example.
Run: pytest groebner/test_groebner.py -q
"""
import random
from fractions import Fraction
from pathlib import Path

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from groebner.buchberger import (
    GroebnerBasis,
    buchberger,
    is_groebner,
    normal_form,
    reduce_basis,
    s_polynomial,
)
from groebner.ideals import eliminate, ideal_equal, ideal_membership, implicitize
from polyring.orders import DEGLEX, DEGREVLEX, LEX, block_order
from polyring.parser import parse_poly, parse_poly_list
from polyring.polynomial import Polynomial, variables
from polyring.variables import RingMismatchError, VariableSet
from reversibility.implicit import build_H_ideal, theta_reduce
from reversibility.sibirsky import sibirsky_generators
from system.family import new_family

DATA = Path(__file__).resolve().parent.parent / "data"
R = VariableSet(["x", "y", "z"])
x, y, z = variables(R)
TERMS5 = [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
FAM5 = new_family(1, 2, TERMS5)
FAM23 = new_family(2, 3, TERMS5)
FAM13 = new_family(1, 3, TERMS5)


def _published():
    lines = (DATA / "published_ideal5.txt").read_text(encoding="utf-8").splitlines()
    body = [ln for ln in lines if not ln.strip().startswith("vars")]
    return parse_poly_list(body, FAM5.ring)


def _from_sympy(expr, gens, ring):
    poly = sp.Poly(expr, *gens)
    return Polynomial(ring, {m: Fraction(int(c.p), int(c.q)) for m, c in poly.as_dict().items()})


def _to_sympy(f, gens):
    out = sp.Integer(0)
    for m, c in f.terms.items():
        term = sp.Rational(c.numerator, c.denominator)
        for g, e in zip(gens, m):
            term *= g**e
        out += term
    return out


def _random_ideal(rng):
    polys = []
    for _ in range(rng.randint(2, 3)):
        terms = {}
        for _ in range(rng.randint(2, 3)):
            m = tuple(rng.randint(0, 2) for _ in range(3))
            terms[m] = Fraction(rng.randint(-3, 3) or 1, rng.randint(1, 2))
        polys.append(Polynomial(R, terms))
    return [f for f in polys if not f.is_constant()] or [x * y - z]


@pytest.fixture(scope="module")
def implicit5():
    return implicitize(FAM5)


# ---- normal form ----

def test_normal_form_examples():
    f = x ** 2 * y + 3 * z
    assert normal_form(f, [f], LEX).is_zero()
    assert normal_form(x ** 2 * y, [x ** 2 - 1], LEX) == y
    r = normal_form(x ** 3 + y, [x ** 2 - y], LEX)
    assert normal_form(r, [x ** 2 - y], LEX) == r
    with pytest.raises(RingMismatchError):
        normal_form(x, [Polynomial.variable(VariableSet(["x"]), "x")], LEX)


def test_s_polynomial():
    s = s_polynomial(x ** 2 - y, x * y - z, LEX)
    assert s == -y ** 2 + x * z


@settings(max_examples=60, deadline=None)
@given(
    st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2)), st.integers(-4, 4), max_size=4),
    st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2)), st.integers(-4, 4), max_size=4),
)
def test_normal_form_linear_modulo_ideal(fd, gd):
    G = buchberger([x ** 2 - y, x * y - z], DEGREVLEX).elements
    f, g = Polynomial(R, fd), Polynomial(R, gd)
    lhs = normal_form(f + g, G, DEGREVLEX)
    rhs = normal_form(normal_form(f, G, DEGREVLEX) + normal_form(g, G, DEGREVLEX), G, DEGREVLEX)
    assert lhs == rhs


# ---- Buchberger ----

def test_buchberger_examples():
    assert buchberger([x], LEX).elements == (x,)
    G = buchberger([x + y, x - y], LEX)
    assert set(G.elements) == {x, y}
    assert buchberger([x, x + y], LEX).elements == (y, x)
    assert buchberger([Polynomial.zero(R)], LEX).is_zero_ideal()
    assert buchberger([x, Polynomial.one(R)], LEX).is_unit_ideal()
    with pytest.raises(RingMismatchError):
        buchberger([x, Polynomial.variable(VariableSet(["x"]), "x")])


def test_reduce_basis():
    raw = buchberger([x, x + y], LEX, reduce=False)
    red = reduce_basis(raw)
    assert set(red.elements) == {x, y}
    assert reduce_basis(red) == red
    with pytest.raises(ValueError):
        reduce_basis(GroebnerBasis(R, LEX, (x + y, x - y)))


@pytest.mark.parametrize("order,name", [(LEX, "lex"), (DEGLEX, "grlex"), (DEGREVLEX, "grevlex")])
@pytest.mark.parametrize("seed", range(6))
def test_buchberger_matches_sympy(order, name, seed):
    rng = random.Random(seed)
    F = _random_ideal(rng)
    G = buchberger(F, order)
    assert is_groebner(G.elements, order)
    gens = sp.symbols("x y z")
    ref = sp.groebner([_to_sympy(f, gens) for f in F], *gens, order=name)
    expected = {_from_sympy(e, gens, R).primitive(order) for e in ref.exprs}
    assert set(G.elements) == expected


@pytest.mark.parametrize("seed", range(4))
def test_reduced_basis_independent_of_input_order_and_workers(seed):
    rng = random.Random(seed)
    F = _random_ideal(rng) + [x * z - y ** 2]
    base = buchberger(F, DEGREVLEX)
    shuffled = list(F)
    rng.shuffle(shuffled)
    assert buchberger(shuffled, DEGREVLEX) == base
    assert buchberger(F, DEGREVLEX, workers=3) == base


def _all_pairs_reduce(G, order):
    elems = [g for g in G if g]
    return all(
        normal_form(s_polynomial(elems[i], elems[j], order), elems, order).is_zero()
        for j in range(len(elems))
        for i in range(j)
    )


@pytest.mark.parametrize("seed", range(8))
def test_chain_criterion_agrees_with_all_pairs(seed):
    rng = random.Random(seed)
    F = _random_ideal(rng) + [x * z - y ** 2]
    raw = buchberger(F, DEGREVLEX, reduce=False).elements
    assert is_groebner(raw, DEGREVLEX)
    assert _all_pairs_reduce(raw, DEGREVLEX)
    assert is_groebner(F, DEGREVLEX) == _all_pairs_reduce(F, DEGREVLEX)


def test_is_groebner_rejects_incomplete_basis():
    assert not is_groebner([x ** 2 - y, x * y - z], LEX)
    assert is_groebner([x ** 2 - y, x * y - z, y ** 2 - x * z], DEGREVLEX) == _all_pairs_reduce(
        [x ** 2 - y, x * y - z, y ** 2 - x * z], DEGREVLEX
    )
    assert is_groebner([x, y, z], LEX)


# ---- ideals ----

def test_eliminate_examples():
    T = VariableSet(["t", "x", "y"])
    t, tx, ty = variables(T)
    out = eliminate([t - tx, t ** 2 - ty], ["t"])
    sub = VariableSet(["x", "y"])
    assert out == [parse_poly("x^2 - y", sub)]
    assert set(eliminate([tx + ty, tx - ty], [], LEX)) == {tx, ty}
    with pytest.raises(ValueError):
        eliminate([t - tx], ["x"])


def test_eliminate_twisted_cubic():
    lines = (DATA / "twisted_cubic.txt").read_text(encoding="utf-8").splitlines()
    T = VariableSet(["t", "x", "y", "z"])
    F = parse_poly_list([ln for ln in lines if not ln.startswith("vars")], T)
    out = eliminate(F, ["t"], DEGREVLEX)
    sub = VariableSet(["x", "y", "z"])
    expected = [parse_poly(s, sub) for s in ("x^2 - y", "x*y - z", "y^2 - x*z")]
    assert ideal_equal(out, expected)


def test_membership_and_equality():
    assert ideal_membership(x * y, [x * y, z])
    assert not ideal_membership(x, [x ** 2])
    assert ideal_equal([x, y], [y, x + y])
    assert not ideal_equal([x], [x ** 2])
    assert ideal_equal([], [Polynomial.zero(R)])


def test_implicitize_degree5_matches_published(implicit5):
    published = _published()
    assert len(published) == 9
    assert ideal_equal(implicit5, published)
    assert parse_poly("2*a21 - b21", FAM5.ring) in implicit5


def test_published_generators_in_H_elimination_basis():
    problem = build_H_ideal(FAM5, param_order="sorted")
    G = buchberger(list(problem.H), LEX)
    params = set(problem.param_names)
    free = [g.embed(problem.param_ring).embed(FAM5.ring) for g in G if set(g.variables()) <= params]
    assert ideal_equal(free, _published())


def test_sibirsky_equals_elimination(implicit5):
    sib = sibirsky_generators(FAM5, 3).generators
    assert ideal_equal(sib, implicit5)


@pytest.mark.parametrize("fam,K", [(FAM23, 2), (FAM23, 3)])
def test_sibirsky_equals_elimination_other_resonances(fam, K):
    assert ideal_equal(sibirsky_generators(fam, K).generators, implicitize(fam))


def test_sibirsky_reaches_elimination_for_1_3():
    implicit = implicitize(FAM13)
    for K in range(1, 6):
        sib = sibirsky_generators(FAM13, K).generators
        assert all(ideal_membership(g, implicit) for g in sib if g)
        if ideal_equal(sib, implicit):
            break
    else:
        pytest.fail("Sibirsky generators up to level 5 do not generate the elimination ideal")


def test_elimination_basis_of_H_satisfies_criterion():
    problem = build_H_ideal(FAM5)
    order = block_order(len(problem.elimination_names), LEX, LEX)
    G = buchberger(list(problem.H), order)
    assert is_groebner(G.elements, order)
    sib_basis = buchberger(sibirsky_generators(FAM5, 3).generators, DEGREVLEX)
    assert is_groebner(sib_basis.elements, DEGREVLEX)


def test_implicitize_small_families():
    single = new_family(1, 2, [(1, 1)])
    assert implicitize(single) == [parse_poly("2*a21 - b21", single.ring)]
    assert implicitize(new_family(1, 2, [])) == []
    sorted_order = implicitize(FAM5, param_order="sorted")
    assert ideal_equal(sorted_order, _published())


def test_implicit_generators_vanish_on_parametrization(implicit5):
    problem = build_H_ideal(FAM5)
    for g in implicit5:
        assert theta_reduce(problem, g).is_zero()


def test_reversible_points_lie_on_variety():
    rng = random.Random(5)
    for _ in range(5):
        values = {}
        for t in FAM5.terms:
            a = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
            values[(t.u, t.v)] = (a, 2 * a)
        point = FAM5.with_values(values).numeric_point()
        for g in _published():
            assert g.substitute(point).is_zero()
    point = FAM5.with_values({n: 1 for n in FAM5.names}).numeric_point()
    assert any(not g.substitute(point).is_zero() for g in _published())


def test_membership_of_a01_fails():
    assert not ideal_membership(parse_poly("a01", FAM5.ring), _published())


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
