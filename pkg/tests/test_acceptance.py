"""Acceptance criteria 1-8, one test each; a PASS/FAIL line per criterion is printed at the end of the run."""

import random
import time
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loewylab.certify import (
    build_certificate,
    certificate_from_json,
    certificate_to_json,
    linearity_defect_check,
    verify_certificate,
)
from loewylab.graded import is_cohen_macaulay, random_linear_sop, tangent_cone
from loewylab.harness import HarnessConfig, corpus_ids, verify
from loewylab.koszul import castelnuovo_mumford_regularity
from loewylab.localring import cohen_presentation, gll_estimate, loewy_length
from loewylab.oracle import (
    TruncatedIdeal,
    artinian_betti_numbers,
    brute_force_loewy_length,
    cross_check,
    membership_probes,
)
from loewylab.resolve import complexity_probe, cyclic_presentation, betti_numbers
from loewylab.stdbasis import StdBasis, standard_basis, vec_from_poly

from conftest import ACCEPTANCE, cached_ring

MINUTES = 60.0


def record(k, ok, detail):
    ACCEPTANCE[k] = (bool(ok), detail)
    assert ok, detail


@lru_cache(maxsize=None)
def invariants(rid, seed=0):
    R = cached_ring(rid)
    G = tangent_cone(R)
    return G, castelnuovo_mumford_regularity(G, seed).value, is_cohen_macaulay(G, seed).is_cm


def strict_cm_ids():
    return [r for r in corpus_ids() if invariants(r)[2]]


def test_criterion_1_e2():
    t0 = time.monotonic()
    R = cached_ring("E2")
    G, reg, cm = invariants("E2")
    g = gll_estimate(R, samples=200, max_param_order=3, seed=0, G=G, regularity=reg)
    cp = cohen_presentation(R, G)
    dt = time.monotonic() - t0
    got = dict(reg=reg, gll=g.value, certified=g.certified, strict_cm=cm, maxord=cp.maxord,
               t_mark=cp.t_mark_bound, sops=g.samples, seconds=round(dt, 1))
    ok = (reg, g.value, g.certified, cm, cp.maxord, cp.t_mark_bound) == (6, 6, False, False, 3, 4) \
        and g.samples >= 200 and dt < 5 * MINUTES
    record(1, ok, str(got))


def test_criterion_2_e3_family():
    rows, ok = [], True
    for n in (2, 3):
        t0 = time.monotonic()
        rid = f"E3n{n}"
        R = cached_ring(rid)
        G, reg, cm = invariants(rid)
        ll_xz = loewy_length(R, [R.poly("x"), R.poly("z")])
        g = gll_estimate(R, samples=20, max_param_order=3, seed=0, G=G, regularity=reg)
        t_mark = cohen_presentation(R, G).t_mark_bound
        dt = time.monotonic() - t0
        ok &= (ll_xz, cm, reg, g.value, g.certified, t_mark) == (2 * n, True, 2 * n - 1, 2 * n, True, 4)
        ok &= dt < 5 * MINUTES
        rows.append(dict(n=n, ll_xz=ll_xz, strict_cm=cm, reg=reg, gll=g.value, certified=g.certified,
                         t_mark=t_mark, seconds=round(dt, 1)))
    record(2, ok, str(rows))


def test_criterion_3_gll_equals_reg_plus_one():
    rows, ok = {}, True
    for rid in strict_cm_ids():
        R = cached_ring(rid)
        vals = set()
        for seed in (0, 1):
            G, reg, cm = invariants(rid, seed)
            g = gll_estimate(R, samples=10, seed=seed, G=G, regularity=reg)
            lin = [loewy_length(R, random_linear_sop(G, random.Random(f"{seed}:{k}"))) if G.dim else loewy_length(R)
                   for k in range(3)]
            ok &= g.certified and g.value == reg + 1 and set(lin) == {reg + 1}
            vals.add((reg, g.value, tuple(lin)))
        ok &= len(vals) == 1
        rows[rid] = sorted(vals)
    record(3, ok, str(rows))


def test_criterion_4_certificates():
    rows, ok = {}, True
    for rid in strict_cm_ids():
        R = cached_ring(rid)
        reg = invariants(rid)[1]
        cert = build_certificate(R, d=4, rng_seed=0, target_n=reg)
        good = cert.ok and verify_certificate(certificate_from_json(certificate_to_json(cert))).ok
        ok &= good
        rows[rid] = (reg, good)
    fail = build_certificate(cached_ring("E2"), d=4, rng_seed=0, target_n=6)
    ok &= not fail.ok
    rows["E2 n=6"] = f"failure at step {getattr(fail, 'step', None)}"
    record(4, ok, str(rows))


def test_criterion_5_module_bounds():
    rows, ok = {}, True
    cfg = HarnessConfig(gll_samples=5, module_samples=50, certify=False)
    for rid in corpus_ids():
        rep = verify(cached_ring(rid), cfg)
        need = 50 if rep.dim else 1
        ok &= len(rep.modules) >= need and not rep.violations and not rep.errors
        lls = [m["ll"] for m in rep.modules]
        rows[rid] = dict(modules=len(rep.modules), min_ll=min(lls), maxord=rep.maxord, t_mark=rep.t_mark_bound,
                         reg=rep.regularity, strict_cm=rep.strict_cm, violations=len(rep.violations))
    record(5, ok, str(rows))


def test_criterion_6_linearity_defect():
    rows, ok = {}, True
    for rid in ("E3n2", "hyp"):
        R = cached_ring(rid)
        G, reg, _ = invariants(rid)
        sop = random_linear_sop(G, random.Random(0))
        for j in (reg, reg + 1):
            res = linearity_defect_check(R, sop, 3, j)
            ok &= sorted(res) == [0, 1, 2, 3] and all(res.values())
            rows[f"{rid} j={j}"] = res
    record(6, ok, str(rows))


def test_criterion_7_betti_growth():
    R = cached_ring("x4y4")
    J = [R.poly("x^2"), R.poly("y^2")]
    rep = complexity_probe(R, J, 6)
    oracle = artinian_betti_numbers(R, J, 6)
    direct = betti_numbers(R, cyclic_presentation(R, J), 6)
    ok = rep.applicable and direct == oracle == rep.betti \
        and all(rep.betti[2 * m] >= m + 1 for m in range(4))
    record(7, ok, f"betti={direct} oracle={oracle} required={[m + 1 for m in range(4)]}")


ORACLE_IDS = corpus_ids()


@lru_cache(maxsize=None)
def _membership_oracles(rid, D):
    R = cached_ring(rid)
    T = TruncatedIdeal(list(R.gens), R.nvars, R.char, D)
    S = standard_basis(list(R.gens), nvars=R.nvars, p=R.char, trunc=D + 1) if R.gens else None
    return T, S


_property_failures = []


@settings(max_examples=30)
@given(st.sampled_from(ORACLE_IDS), st.integers(0, 10**6))
def test_oracle_property(rid, seed):
    """Random membership probes (degree <= 8) and random linear cuts agree with brute force."""
    R = cached_ring(rid)
    T, S = _membership_oracles(rid, 8)
    for f in membership_probes(R, random.Random(seed), 6, 8):
        lib = all(sum(m) > 8 for m in f.terms) if S is None else \
            StdBasis(S.order, 1, R.nvars, R.char, S.elems, 9).contains(vec_from_poly(f))
        if lib != T.contains(f):
            _property_failures.append((rid, seed, R.fmt(f)))
    G = invariants(rid)[0]
    cut = random_linear_sop(G, random.Random(seed)) if G.dim else []
    # brute force up to the claimed value must find the first vanishing degree exactly there
    ll = loewy_length(R, cut)
    if ll != brute_force_loewy_length(R, cut, min(ll, 12)):
        _property_failures.append((rid, seed, "ll"))
    assert not _property_failures


def test_criterion_8_oracle_equivalence():
    rows, ok = {}, True
    for rid in ORACLE_IDS:
        rep = cross_check(cached_ring(rid), max_degree=12, member_degree=8, probes=20, seed=0)
        ok &= rep.ok
        rows[rid] = "ok" if rep.ok else rep.mismatches
    ok &= not _property_failures
    record(8, ok, f"{rows} property_failures={len(_property_failures)}")
