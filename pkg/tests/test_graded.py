import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from loewylab.graded import (
    hilbert_numerator,
    homogenizing_weights,
    is_cohen_macaulay,
    krull_dim,
    minimal_monomials,
    monomials_of_weight,
    random_linear_sop,
    random_weighted_linear_sop,
    tangent_cone,
)
from loewylab.harness import corpus_ids
from loewylab.presentation import make_ring
from loewylab.ring import monomials_of_degree

from conftest import cached_ring


def standard_counts(lead, nvars, upto):
    return [sum(1 for m in monomials_of_degree(nvars, d)
                if not any(all(a <= b for a, b in zip(g, m)) for g in lead)) for d in range(upto + 1)]


def test_hilbert_numerator_examples():
    H = hilbert_numerator([(2, 0), (1, 1)], 2)
    assert list(H.numerator) == [1, 0, -2, 1] and H.denom_power == 2
    assert H.coefficients(10) == standard_counts([(2, 0), (1, 1)], 2, 10)
    # 1 - 2t^2 + t^3 = (1 - t)(1 + t - t^2)
    assert H.reduced() == ([1, 1, -1], 1)
    assert list(hilbert_numerator([], 3).numerator) == [1]
    assert list(hilbert_numerator([(1,)], 1).numerator) == [1, -1]


def test_tangent_cone_examples():
    G = tangent_cone(make_ring(["x", "y"], ["x^2 - y^3"]))
    assert minimal_monomials(G.leading_monomials) == [(2, 0)] and G.dim == 1
    G = tangent_cone(make_ring(["x", "y"], []))
    assert G.leading_monomials == [] and G.dim == 2
    assert tangent_cone(cached_ring("E2")).dim == 1


def test_krull_dim_examples():
    assert krull_dim(tangent_cone(make_ring(["x", "y"], ["x^2", "x*y"]))) == 1
    assert krull_dim(tangent_cone(make_ring(["x", "y", "z"], []))) == 3
    assert krull_dim(tangent_cone(make_ring(["x", "y"], ["x^2", "x*y", "y^2"]))) == 0


def test_sop_examples():
    R = cached_ring("E3n2")
    G = tangent_cone(R)
    assert G.quotient_hilbert([R.poly("x"), R.poly("z")]).dim == 0
    assert random_linear_sop(tangent_cone(cached_ring("E1")), 0) == []
    S = make_ring(["x", "y"], ["x^2"])
    for seed in range(5):
        (f,) = random_linear_sop(tangent_cone(S), seed)
        assert f.terms.get((0, 1), 0) != 0


def test_cm_examples():
    assert is_cohen_macaulay(tangent_cone(cached_ring("E3n2")), 0).is_cm
    assert not is_cohen_macaulay(tangent_cone(cached_ring("E2")), 0).is_cm
    assert is_cohen_macaulay(tangent_cone(cached_ring("E6")), 0).is_cm


@pytest.mark.parametrize("rid", corpus_ids() + ["hyp"])
def test_hilbert_expansion_matches_standard_monomials(rid):
    G = tangent_cone(cached_ring(rid))
    assert G.hilbert.coefficients(12) == standard_counts(G.leading_monomials, G.nvars, 12)


@pytest.mark.parametrize("rid", corpus_ids())
def test_hyperplane_section_dominates(rid):
    # HS(R^g/(l)) >= HS(R^g)(1-t) coefficientwise, equality for the sampled generic form iff CM-compatible
    G = tangent_cone(cached_ring(rid))
    if G.dim == 0:
        return
    rng = random.Random(3)
    (l, *_) = random_linear_sop(G, rng)
    q = G.quotient_hilbert([l]).coefficients(12)
    full = G.hilbert.coefficients(13)
    cut = [full[0]] + [full[j] - full[j - 1] for j in range(1, 13)]
    assert all(a >= b for a, b in zip(q, cut))


def test_tangent_cone_independent_of_generators():
    R = cached_ring("E2")
    f, g = R.gens
    S = R.with_gens([f, g + f * R.poly("y"), f + g])
    assert sorted(tangent_cone(R).leading_monomials) == sorted(tangent_cone(S).leading_monomials)


def test_weights():
    assert homogenizing_weights(cached_ring("E3n3").gens, 5) == (3, 3, 2, 2, 2)
    assert homogenizing_weights(cached_ring("hyp").gens, 2) == (3, 2)
    assert homogenizing_weights(cached_ring("E2").gens, 3) is None
    assert homogenizing_weights(cached_ring("E6").gens, 2) == (1, 1)
    assert sorted(monomials_of_weight((3, 2), 6)) == [(0, 3), (2, 0)]


@given(st.integers(0, 3))
def test_weighted_sop_is_homogeneous(seed):
    R = cached_ring("E3n3")
    G = tangent_cone(R)
    w = homogenizing_weights(R.gens, R.nvars)
    sop = random_weighted_linear_sop(G, w, seed)
    assert len(sop) == 2
    for f in sop:
        assert len({sum(a * b for a, b in zip(m, w)) for m in f.terms}) == 1
    assert G.quotient_hilbert(sop).dim == 0
