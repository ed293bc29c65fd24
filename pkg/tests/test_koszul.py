import pytest
from hypothesis import given
from hypothesis import strategies as st

from loewylab.graded import random_linear_sop, tangent_cone
from loewylab.harness import corpus_ids
from loewylab.koszul import (
    castelnuovo_mumford_regularity,
    graded_homology_rank,
    koszul_graded,
    regularity,
    regularity_upper_bound,
)
from loewylab.localring import loewy_length
from loewylab.presentation import make_ring

from conftest import cached_ring

# values quoted for the corpus; E3(n) has reg = 2n - 1
REGULARITY = {"E1": 2, "E2": 6, "E3n2": 3, "E3n3": 5, "E4": 1, "E5": 0, "E6": 1, "hyp": 1}


def test_hand_koszul_one_variable():
    R = make_ring(["x", "y"], ["x^2"])
    G = tangent_cone(R)
    C = koszul_graded(G, [R.poly("y")])
    assert [graded_homology_rank(C, 0, j) for j in range(4)] == [1, 1, 0, 0]
    assert all(graded_homology_rank(C, 1, j) == 0 for j in range(5))


def test_koszul_of_variables_resolves_k():
    R = make_ring(["x", "y"], [])
    C = koszul_graded(tangent_cone(R), [R.poly("x"), R.poly("y")])
    assert graded_homology_rank(C, 0, 0) == 1
    assert all(graded_homology_rank(C, i, j) == 0 for i in range(3) for j in range(6) if (i, j) != (0, 0))


def test_no_forms_gives_the_ring():
    R = cached_ring("E6")
    C = koszul_graded(tangent_cone(R), [])
    assert [graded_homology_rank(C, 0, j) for j in range(3)] == [1, 2, 0]


def test_h0_of_e3_reduction():
    R = cached_ring("E3n2")
    C = koszul_graded(tangent_cone(R), [R.poly("x"), R.poly("z")])
    assert [graded_homology_rank(C, 0, j) > 0 for j in range(5)] == [True, True, True, True, False]


@pytest.mark.parametrize("rid", list(REGULARITY))
def test_regularity_values(rid):
    assert regularity(cached_ring(rid)) == REGULARITY[rid]


@pytest.mark.parametrize("m", [1, 2, 3, 5])
def test_regularity_of_monomial_hypersurface(m):
    assert regularity(make_ring(["x"], [f"x^{m}"])) == m - 1


@pytest.mark.parametrize("rid", corpus_ids())
def test_seed_independence_and_bounds(rid):
    R = cached_ring(rid)
    G = tangent_cone(R)
    vals = {castelnuovo_mumford_regularity(G, s).value for s in range(3)}
    assert len(vals) == 1
    reg = vals.pop()
    assert reg <= regularity_upper_bound(G)
    # ll(R/(x)) - 1 <= reg for the sampled superficial sop
    assert loewy_length(R, random_linear_sop(G, 0)) - 1 <= reg


@pytest.mark.parametrize("rid", ["E2", "E3n2", "hyp", "E5"])
def test_complex_and_euler_characteristic(rid):
    R = cached_ring(rid)
    G = tangent_cone(R)
    C = koszul_graded(G, random_linear_sop(G, 1))
    for J in range(8):
        C.check_complex(J)
        chi = sum((-1) ** i * C.slice_dim(i, J) for i in range(C.d + 1))
        hom = sum((-1) ** i * graded_homology_rank(C, i, J) for i in range(C.d + 1))
        assert chi == hom


@given(st.integers(1, 4), st.integers(1, 4))
def test_regularity_of_monomial_complete_intersection(a, b):
    # k[x,y]/(x^a, y^b) has socle degree a + b - 2
    assert regularity(make_ring(["x", "y"], [f"x^{a}", f"y^{b}"])) == a + b - 2
