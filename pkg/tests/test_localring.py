import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loewylab.graded import random_linear_sop, tangent_cone
from loewylab.harness import corpus_ids
from loewylab.localring import (
    LoewyBoundExceeded,
    NotZeroDimensional,
    artinian_reduction,
    candidate_sops,
    cohen_presentation,
    gll_estimate,
    loewy_length,
)
from loewylab.oracle import brute_force_loewy_length
from loewylab.presentation import make_ring

from conftest import cached_ring
from test_koszul import REGULARITY


def test_artinian_examples():
    assert loewy_length(cached_ring("E1")) == 3
    assert loewy_length(cached_ring("E6")) == 2
    assert loewy_length(cached_ring("x4y4")) == 7
    A = artinian_reduction(cached_ring("x4y4"), [])
    assert A.length == 16


def test_cut_by_variables():
    R = make_ring(["x", "y"], [])
    assert loewy_length(R, [R.poly("x"), R.poly("y")]) == 1
    assert loewy_length(R, [R.poly("x^2"), R.poly("y^3")]) == 4
    assert loewy_length(R, [R.poly("x^2 + y^3"), R.poly("x*y")]) == 4


def test_unit_cut_gives_zero_ring():
    R = make_ring(["x"], [])
    assert loewy_length(R, [R.poly("1 + x")]) == 0


def test_positive_dimension_raises():
    R = cached_ring("E3n2")
    with pytest.raises(NotZeroDimensional):
        loewy_length(R, [R.poly("x")])


def test_truncation_exhausted_is_reported():
    # y^30 kills nothing below degree 30
    R = make_ring(["x", "y"], ["x"])
    with pytest.raises(LoewyBoundExceeded):
        loewy_length(R, [R.poly("y^30")])
    assert loewy_length(R, [R.poly("y^20")]) == 20


def test_local_units_are_inverted():
    # x - x^2 = x(1 - x) generates the same ideal as x in the local ring
    R = make_ring(["x", "y"], [])
    assert loewy_length(R, [R.poly("x - x^2"), R.poly("y^2")]) == 2


@pytest.mark.parametrize("rid", corpus_ids() + ["hyp"])
def test_loewy_length_matches_matrices_and_brute_force(rid):
    R = cached_ring(rid)
    G = tangent_cone(R)
    cut = random_linear_sop(G, random.Random(3)) if G.dim else []
    A = artinian_reduction(R, cut)
    assert A.loewy_length() == A.loewy_length_matrices() == brute_force_loewy_length(R, cut, 12)


@pytest.mark.parametrize("rid", ["E1", "E6", "x4y4"])
def test_socle_element_has_top_order(rid):
    A = artinian_reduction(cached_ring(rid), [])
    s, n = A.socle_max_order_element()
    assert n == A.loewy_length() - 1
    for M in A.mult:
        assert not (M @ A.coords(s) % A.p).any()


@pytest.mark.parametrize("rid,orders,ci,t_mark", [
    ("E1", [3], True, 3),
    ("E2", [2, 3], True, 4),
    ("E3n2", [2, 2, 2], True, 4),
    ("E3n3", [2, 2, 2], True, 4),
    ("E4", [2], True, 2),
    ("E6", [2, 2, 2], False, None),
])
def test_cohen_presentation(rid, orders, ci, t_mark):
    cp = cohen_presentation(cached_ring(rid))
    assert sorted(cp.orders) == orders
    assert cp.is_ci == ci
    assert cp.t_mark_bound == t_mark
    assert cp.minimal_embedding


def test_regular_ring_has_no_orders():
    cp = cohen_presentation(cached_ring("E5"))
    assert cp.ord is None and cp.maxord is None
    assert cp.is_ci and cp.t_mark_bound == 1


def test_non_minimal_embedding_is_flagged():
    cp = cohen_presentation(make_ring(["x", "y"], ["x - y^2"]))
    assert not cp.minimal_embedding


@pytest.mark.parametrize("rid", corpus_ids())
def test_order_chain(rid):
    R = cached_ring(rid)
    cp = cohen_presentation(R)
    if cp.ord is not None:
        assert cp.ord <= cp.maxord <= REGULARITY[rid] + 1


@pytest.mark.parametrize("rid,value,certified", [
    ("E1", 3, True), ("E4", 2, True), ("E5", 1, True), ("E6", 2, True),
    ("hyp", 2, True), ("E3n2", 4, True), ("E2", 6, False),
])
def test_gll_values(rid, value, certified):
    g = gll_estimate(cached_ring(rid), samples=10)
    assert (g.value, g.certified) == (value, certified)
    assert g.value == min(g.values)


@settings(max_examples=8)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(1, 3), st.integers(1, 3), st.integers(0, 50))
def test_gll_monotone(s1, s2, o1, o2, seed):
    R = cached_ring("hyp")
    lo = gll_estimate(R, min(s1, s2), min(o1, o2), seed)
    hi = gll_estimate(R, max(s1, s2), max(o1, o2), seed)
    assert hi.value <= lo.value


def test_candidates_nest():
    R = cached_ring("E2")
    G = tangent_cone(R)
    small = candidate_sops(R, G, 4, 2, 7)
    big = candidate_sops(R, G, 4, 3, 7)
    assert small == big[:len(small)]
