import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from loewylab.graded import minimal_monomials
from loewylab.linalg import SparseEchelon
from loewylab.oracle import TruncatedIdeal
from loewylab.presentation import parse_poly
from loewylab.ring import DS, GREVLEX, Polynomial, grevlex_key, initial_form, monomials_of_degree
from loewylab.stdbasis import (
    ResourceError,
    StdBasis,
    buchberger,
    minimalize_generators,
    mora_nf,
    preimage_in_submodule,
    standard_basis,
    submodule_intersection,
    syzygies,
    vec_add,
    vec_from_poly,
    vec_mul_poly,
)

from conftest import P, nonunit_polynomials

XY = ("x", "y")


def poly(text, names=XY):
    return parse_poly(text, names)


def vec(f, c=0):
    return vec_from_poly(f, c)


def combine(gens, coeffs, p=P):
    out = {}
    for g, h in zip(gens, coeffs):
        out = vec_add(out, vec_mul_poly(g, h), p)
    return out


def homogeneous_leading_oracle(gens, nvars, D):
    """Leading monomials (grevlex) of ``I_d`` for homogeneous ``I`` and ``d <= D`` by linear algebra."""
    ech = SparseEchelon(P, grevlex_key)
    for g in gens:
        for e in range(D - g.degree() + 1):
            for mu in monomials_of_degree(nvars, e):
                ech.add(dict(g.shift(mu).terms))
    return set(ech.pivots())


def test_buchberger_example():
    B = buchberger([poly("x^2 - y"), poly("y^2")])
    assert sorted(minimal_monomials(B.leading_monomials())) == [(0, 2), (2, 0)]
    # degree <= 8 oracle: every element of I of degree <= 6 has its leading monomial in (x^2, y^2)
    ech = SparseEchelon(P, grevlex_key)
    for g in (poly("x^2 - y"), poly("y^2")):
        for e in range(7):
            for mu in monomials_of_degree(2, e):
                ech.add(dict(g.shift(mu).terms))
    low = {m for m in ech.pivots() if sum(m) <= 5}
    expected = {m for d in range(6) for m in monomials_of_degree(2, d) if m[0] >= 2 or m[1] >= 2}
    assert low == expected


def test_buchberger_trivial_cases():
    assert buchberger([poly("x")]).leading_monomials() == [(1, 0)]
    assert sorted(buchberger([poly("x"), poly("y")]).leading_monomials()) == [(0, 1), (1, 0)]


def test_mora_examples():
    assert mora_nf(poly("x", ("x",)), [poly("x - x^2", ("x",))]).is_zero()
    assert mora_nf(poly("y"), [poly("x")]) == poly("y")
    r = mora_nf(poly("x^2"), [poly("x^2 - y^5")])
    assert set(r.terms) == {(0, 5)}


def test_standard_basis_unit_cancellation():
    S = standard_basis([poly("x - x^2", ("x",))])
    assert S.leading_monomials() == [(1,)]


def test_local_vs_global_on_homogeneous_input():
    gens = [poly("x^2 + x*y"), poly("y^3")]
    a = minimal_monomials(standard_basis(gens).leading_monomials())
    b = minimal_monomials(buchberger(gens).leading_monomials())
    assert sorted(a) == sorted(b)


def test_syzygy_examples():
    x, y = poly("x"), poly("y")
    syz = syzygies([vec(x), vec(y)], 1, 2, P)
    assert len(syz) == 1
    s = syz[0]
    assert not combine([vec(x), vec(y)], [Polynomial({m: a for (c, m), a in s.items() if c == k}, 2, P) for k in range(2)])
    assert syzygies([vec(poly("x^2"))], 1, 2, P) == []
    syz = syzygies([vec(poly("x^2")), vec(poly("x*y"))], 1, 2, P)
    assert len(syz) == 1 and {c for c, _ in syz[0]} == {0, 1}
    assert all(sum(m) == 1 for _, m in syz[0])


def test_intersection_examples():
    I = submodule_intersection([vec(poly("x"))], [vec(poly("y"))], 1, 2, P)
    assert I.leading_monomials() == [(1, 1)]
    I = submodule_intersection([vec(poly("x"))], [vec(poly("x + x^2"))], 1, 2, P)
    assert I.leading_monomials() == [(1, 0)]


def test_minimalize_examples():
    xy = poly("x^2"), poly("x^2 + x^3*y"), poly("y^3")
    assert len(minimalize_generators(list(xy))) == 2
    de = [parse_poly(t, ("x", "y", "z")) for t in ("x^2 - y^5", "x*y^2 + y*z^3 - z^5")]
    assert minimalize_generators(de) == de
    assert minimalize_generators([]) == []


def test_constrained_preimage():
    # over k[x]/(x^3): map (x), target x^2, order >= 1
    x = parse_poly("x", ("x",))
    sol = preimage_in_submodule(vec(x * x), [vec(x)], 1, 1, P, 1, ideal=[x ** 3])
    assert sol is not None
    v, u = sol
    assert u == Polynomial.constant(1, 1, P)
    assert set(m for _, m in v) == {(1,)}
    assert preimage_in_submodule({}, [vec(x)], 1, 1, P, 1) == ({}, Polynomial.constant(1, 1, P))
    assert preimage_in_submodule(vec(Polynomial.constant(1, 1, P)), [vec(x)], 0, 1, P, 1) is None
    # x is in the image but not in m * image
    assert preimage_in_submodule(vec(x), [vec(x)], 1, 1, P, 1, ideal=[x ** 3]) is None


def test_degree_cap():
    gens = [parse_poly(t, ("x", "y", "z")) for t in ("x^2 - y^5", "x*y^2 + y*z^3 - z^5")]
    with pytest.raises(ResourceError):
        standard_basis(gens, degree_cap=4)


ideals2 = st.lists(nonunit_polynomials(2, max_deg=4, max_terms=3), min_size=1, max_size=3)


@given(ideals2, st.lists(nonunit_polynomials(2, max_deg=6, max_terms=3), min_size=1, max_size=3))
def test_nf_zero_iff_member_truncated(gens, coeffs):
    # elements of I reduce to zero; truncated membership agrees with brute force for D <= 8
    S = standard_basis(gens)
    f = Polynomial.zero(2, P)
    for g, h in zip(gens, coeffs):
        f = f + g * h
    assert S.contains(vec(f))
    for D in (3, 5, 8):
        T = TruncatedIdeal(gens, 2, P, D)
        St = StdBasis(DS, 1, 2, P, S.elems, D + 1)
        probe = f + Polynomial({(D // 2, 1): 1}, 2, P)
        assert St.contains(vec(probe)) == T.contains(probe)
        assert T.contains(f)


@given(ideals2, st.randoms(use_true_random=False))
def test_leading_ideal_independent_of_order(gens, rnd):
    a = minimal_monomials(standard_basis(gens).leading_monomials())
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    b = minimal_monomials(standard_basis(shuffled).leading_monomials())
    assert sorted(a) == sorted(b)


@given(st.lists(nonunit_polynomials(3, max_deg=3, max_terms=3), min_size=1, max_size=3))
def test_homogeneous_groebner_matches_linear_algebra(gens):
    gens = [initial_form(g) for g in gens]
    B = buchberger(gens)
    lead = minimal_monomials(B.leading_monomials())
    oracle = homogeneous_leading_oracle(gens, 3, 5)
    for d in range(6):
        for m in monomials_of_degree(3, d):
            in_lead = any(all(a <= b for a, b in zip(g, m)) for g in lead)
            assert in_lead == (m in oracle)


@given(st.lists(nonunit_polynomials(2, max_deg=3, max_terms=3), min_size=2, max_size=3))
def test_syzygies_annihilate(gens):
    cols = [vec(g) for g in gens]
    for s in syzygies(cols, 1, 2, P):
        hs = [Polynomial({m: a for (c, m), a in s.items() if c == k}, 2, P) for k in range(len(gens))]
        assert not combine(cols, hs)


@given(nonunit_polynomials(2, 3, 2), nonunit_polynomials(2, 3, 2), nonunit_polynomials(2, 2, 2))
def test_intersection_members(a, b, h):
    I = submodule_intersection([vec(a)], [vec(b)], 1, 2, P)
    A, B = standard_basis([a]), standard_basis([b])
    for g in I.polys():
        assert A.contains(vec(g)) and B.contains(vec(g))
    ab = a * b * h
    assert I.contains(vec(ab))
