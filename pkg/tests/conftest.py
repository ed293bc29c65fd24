import os
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from loewylab.harness import ring_by_id
from loewylab.ring import Polynomial

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=300, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

P = 32003


@lru_cache(maxsize=None)
def cached_ring(ring_id):
    return ring_by_id(ring_id)


@pytest.fixture
def ring():
    return cached_ring


def polynomials(nvars, max_deg=4, max_terms=4, min_deg=0, p=P):
    mono = st.integers(min_deg, max_deg).flatmap(
        lambda d: st.lists(st.integers(0, nvars - 1), min_size=d, max_size=d)).map(
        lambda vs: tuple(vs.count(v) for v in range(nvars)))
    return st.dictionaries(mono, st.integers(1, p - 1), min_size=1, max_size=max_terms).map(
        lambda d: Polynomial(d, nvars, p))


def nonunit_polynomials(nvars, max_deg=4, max_terms=3):
    return polynomials(nvars, max_deg, max_terms, min_deg=1)


# criterion number -> (passed, detail), filled by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
