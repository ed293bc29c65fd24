"""Ring corpus and per-ring verification reports.

``verify`` computes the invariants of a ring, samples test modules ``R/(sop)``
and checks the lower bounds for their Loewy lengths:

* ``ll(M) >= maxord(R)`` always,
* ``ll(M) >= sum(ord f_i) - codim + 1`` for complete intersections,
* ``ll(M) >= reg(R^g) + 1`` when ``R^g`` is Cohen-Macaulay.

Failures of an asserted bound are recorded as violations.  Every computation
is wrapped so that one failure (or an exhausted time budget) leaves a partial
report instead of an exception.
"""

from __future__ import annotations

import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .certify import build_certificate, certificate_from_json, certificate_to_json, verify_certificate
from .graded import is_cohen_macaulay, random_linear_sop, tangent_cone
from .koszul import castelnuovo_mumford_regularity
from .localring import NotZeroDimensional, cohen_presentation, gll_estimate, loewy_length, random_sparse_sop_element
from .presentation import RingSpec, make_ring
from .ring import DEFAULT_CHAR

log = logging.getLogger(__name__)

REPORT_SCHEMA = 1


def _e3(n: int):
    return (("a", "b", "x", "y", "z"), [f"a^2 - x^{n}", f"a*b - y^{n}", f"b^2 - z^{n}"])


_CORPUS = {
    "E1": (("x",), ["x^3"], "local"),
    "E2": (("x", "y", "z"), ["x^2 - y^5", "x*y^2 + y*z^3 - z^5"], "local"),
    "E3n2": (*_e3(2), "local"),
    "E3n3": (*_e3(3), "local"),
    "E4": (("x", "y"), ["x^2 + y^2"], "graded"),
    "E5": (("x", "y"), [], "local"),
    "E6": (("x", "y"), ["x^2", "x*y", "y^2"], "local"),
}

# extra rings used by individual checks, addressable like corpus rings
_FIXTURES = {
    "hyp": (("x", "y"), ["x^2 - y^3"], "local"),
    "x4y4": (("x", "y"), ["x^4", "y^4"], "local"),
}


def corpus_ids() -> list:
    return list(_CORPUS)


def ring_by_id(ring_id: str, char: int = DEFAULT_CHAR) -> RingSpec:
    if ring_id.startswith("corpus:"):
        ring_id = ring_id[len("corpus:"):]
    table = _CORPUS if ring_id in _CORPUS else _FIXTURES
    if ring_id not in table:
        raise KeyError(f"unknown corpus ring {ring_id!r}; known: {', '.join(list(_CORPUS) + list(_FIXTURES))}")
    vars_, gens, model = table[ring_id]
    return make_ring(vars_, gens, char, model, name=f"corpus:{ring_id}")


def corpus(char: int = DEFAULT_CHAR) -> list:
    return [ring_by_id(k, char) for k in _CORPUS]


# ---------------------------------------------------------------- configuration and report

@dataclass
class HarnessConfig:
    seed: int = 0
    confirm_seeds: int = 2
    gll_samples: int = 50
    max_param_order: int = 3
    module_samples: int = 50
    linear_sops: int = 3
    depth: int = 4
    certify: bool = True
    time_budget: float | None = None
    degree_cap: int | None = None


@dataclass
class ModuleCheck:
    sop: list
    ll: int
    checks: dict


@dataclass
class InvariantReport:
    ring: str
    char: int
    dim: int | None = None
    ord: int | None = None
    maxord: int | None = None
    is_ci: bool | None = None
    t_mark_bound: int | None = None
    regularity: int | None = None
    strict_cm: bool | None = None
    minimal_regularity: bool | None = None
    linear_ll: list = field(default_factory=list)
    gll: dict | None = None
    modules: list = field(default_factory=list)
    skipped_modules: int = 0
    certificate: dict | None = None
    seeds: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    errors: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self, timings: bool = True) -> dict:
        d = asdict(self)
        d["schema"] = REPORT_SCHEMA
        if not timings:
            d.pop("timings")
        return d


class _Stages:
    """Runs named stages, records timings and captures errors per field."""

    def __init__(self, report: InvariantReport, budget: float | None):
        self.report = report
        self.deadline = None if budget is None else time.monotonic() + budget

    def expired(self) -> bool:
        return self.deadline is not None and time.monotonic() > self.deadline

    def run(self, name: str, fn):
        if self.expired():
            self.report.errors[name] = "skipped: time budget exhausted"
            return None
        t0 = time.monotonic()
        try:
            return fn()
        except Exception as exc:  # recorded per field
            log.info("stage %s failed: %r", name, exc)
            self.report.errors[name] = f"{type(exc).__name__}: {exc}"
            return None
        finally:
            self.report.timings[name] = round(time.monotonic() - t0, 3)


def module_checks(ll: int, maxord, t_mark, regularity, strict_cm) -> dict:
    """Bound name -> ``{"bound", "holds", "asserted"}``."""
    out = {}
    if maxord is not None:
        out["maxord"] = {"bound": maxord, "holds": ll >= maxord, "asserted": True}
    if t_mark is not None:
        out["t_mark"] = {"bound": t_mark, "holds": ll >= t_mark, "asserted": True}
    if regularity is not None:
        out["regularity"] = {"bound": regularity + 1, "holds": ll >= regularity + 1, "asserted": bool(strict_cm)}
    return out


def sample_sops(R: RingSpec, G, count: int, max_param_order: int, seed: int):
    """Yields sops alternating between generic linear and sparse random ones (``[[]]`` in dimension 0)."""
    rng = random.Random(seed)
    d = G.dim
    if d == 0:
        yield []
        return
    for k in range(count):
        if k % 2 == 0:
            yield random_linear_sop(G, rng)
        else:
            yield [random_sparse_sop_element(rng, R.nvars, R.char, max_param_order) for _ in range(d)]


def verify(R: RingSpec, config: HarnessConfig | None = None) -> InvariantReport:
    cfg = config or HarnessConfig()
    rep = InvariantReport(R.name or "ring", R.char)
    rep.seeds = [cfg.seed + k for k in range(cfg.confirm_seeds)]
    st = _Stages(rep, cfg.time_budget)

    G = st.run("tangent_cone", lambda: tangent_cone(R, cfg.degree_cap))
    if G is None:
        return rep
    rep.dim = G.dim

    cp = st.run("cohen_presentation", lambda: cohen_presentation(R, G))
    if cp is not None:
        rep.ord, rep.maxord, rep.is_ci, rep.t_mark_bound = cp.ord, cp.maxord, cp.is_ci, cp.t_mark_bound

    def regularity():
        vals = {castelnuovo_mumford_regularity(G, s).value for s in rep.seeds}
        if len(vals) != 1:
            raise AssertionError(f"regularity depends on the seed: {sorted(vals)}")
        return vals.pop()

    rep.regularity = st.run("regularity", regularity)
    cm = st.run("strict_cm", lambda: is_cohen_macaulay(G, cfg.seed).is_cm)
    rep.strict_cm = cm

    gll = st.run("gll", lambda: gll_estimate(R, cfg.gll_samples, cfg.max_param_order, cfg.seed, G, rep.regularity))
    if gll is not None:
        rep.gll = {"value": gll.value, "certified": gll.certified}
        if rep.maxord is not None and gll.value < rep.maxord:
            rep.violations.append(f"gll {gll.value} < maxord {rep.maxord}")

    def linear_lls():
        if G.dim == 0:
            return [loewy_length(R)]
        return [loewy_length(R, random_linear_sop(G, random.Random(s)))
                for s in range(cfg.seed, cfg.seed + cfg.linear_sops)]

    rep.linear_ll = st.run("linear_ll", linear_lls) or []
    if rep.linear_ll and rep.regularity is not None:
        rep.minimal_regularity = rep.regularity == min(rep.linear_ll) - 1
        if min(rep.linear_ll) - 1 > rep.regularity:
            rep.violations.append(f"ll(R/(x_lin)) - 1 = {min(rep.linear_ll) - 1} exceeds regularity {rep.regularity}")
        if rep.strict_cm and set(rep.linear_ll) != {rep.regularity + 1}:
            rep.violations.append(f"linear sops give ll {rep.linear_ll}, expected reg + 1 = {rep.regularity + 1}")

    def modules():
        # draw until module_samples sops cut to finite length (at most four times as many attempts)
        for sop in sample_sops(R, G, 4 * cfg.module_samples, cfg.max_param_order, cfg.seed):
            if len(rep.modules) >= cfg.module_samples:
                return
            if st.expired():
                rep.errors["modules"] = "partial: time budget exhausted"
                return
            try:
                ll = loewy_length(R, sop)
            except NotZeroDimensional:
                rep.skipped_modules += 1
                continue
            checks = module_checks(ll, rep.maxord, rep.t_mark_bound, rep.regularity, rep.strict_cm)
            rep.modules.append(asdict(ModuleCheck([R.fmt(f) for f in sop], ll, checks)))
            for name, c in checks.items():
                if c["asserted"] and not c["holds"]:
                    rep.violations.append(f"module R/({', '.join(R.fmt(f) for f in sop)}): ll {ll} < {name} bound {c['bound']}")

    st.run("modules", modules)

    if cfg.certify and rep.strict_cm and rep.regularity is not None:
        def certificate():
            cert = build_certificate(R, d=cfg.depth, rng_seed=cfg.seed, target_n=rep.regularity)
            if not cert.ok:
                rep.violations.append(f"certificate failed: {cert.reason}")
                return {"n": rep.regularity, "d": cfg.depth, "ok": False, "failure_step": cert.step}
            ver = verify_certificate(certificate_from_json(certificate_to_json(cert)))
            if not ver.ok:
                rep.violations.append(f"certificate rejected by the verifier: {ver.errors}")
            return {"n": cert.n, "d": cert.d, "ok": ver.ok}

        rep.certificate = st.run("certificate", certificate)
    return rep


def _verify_id(args):
    ring_id, char, cfg = args
    return verify(ring_by_id(ring_id, char), cfg)


def verify_corpus(config: HarnessConfig | None = None, ids=None, char: int = DEFAULT_CHAR,
                  workers: int = 1) -> list:
    """Reports for several corpus rings, optionally in worker processes."""
    ids = list(ids or corpus_ids())
    jobs = [(i, char, config or HarnessConfig()) for i in ids]
    if workers <= 1:
        return [_verify_id(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(_verify_id, jobs))
