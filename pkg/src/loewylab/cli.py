"""Command line interface: ``loewylab <verb> <ring> [flags]``.

Rings are given as ``corpus:<id>`` or as a path to a ring-description file.
Exit codes: 0 success, 1 computation error, 2 a checked bound or certificate failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import certify as cert_mod
from .graded import is_cohen_macaulay, tangent_cone
from .harness import HarnessConfig, REPORT_SCHEMA, corpus_ids, ring_by_id, verify
from .koszul import castelnuovo_mumford_regularity
from .localring import cohen_presentation, gll_estimate
from .oracle import cross_check
from .presentation import RingSpec, make_ring, parse_ring, serialize_ring
from .ring import DEFAULT_CHAR

EXIT_OK, EXIT_ERROR, EXIT_VIOLATION = 0, 1, 2

VERBS = ("invariants", "regularity", "gll", "certify", "verify", "corpus", "oracle")


def _positive(name):
    def check(text):
        v = int(text)
        if v < 1:
            raise argparse.ArgumentTypeError(f"{name} must be positive")
        return v
    return check


def _nonneg(name):
    def check(text):
        v = int(text)
        if v < 0:
            raise argparse.ArgumentTypeError(f"{name} must be nonnegative")
        return v
    return check


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="loewylab", description="Loewy-theoretic invariants of local rings.")
    ap.add_argument("verb", choices=VERBS)
    ap.add_argument("ring", nargs="?", help="corpus:<id> or a ring-description file")
    ap.add_argument("--char", type=int, default=None, help="prime characteristic (default 32003)")
    ap.add_argument("--seed", type=_nonneg("--seed"), default=0)
    ap.add_argument("--samples", type=_positive("--samples"), default=50)
    ap.add_argument("--max-param-order", type=_positive("--max-param-order"), default=3)
    ap.add_argument("--depth", type=_nonneg("--depth"), default=4)
    ap.add_argument("--degree-cap", type=_positive("--degree-cap"), default=None)
    ap.add_argument("--max-degree", type=_nonneg("--max-degree"), default=12, help="oracle truncation degree")
    ap.add_argument("--time-budget", type=float, default=None, help="seconds per ring for verify")
    ap.add_argument("--verify", action="store_true", help="certify: re-verify the serialized certificate")
    ap.add_argument("--target-n", type=_nonneg("--target-n"), default=None, help="certify: order to aim for")
    ap.add_argument("--out", default=None, help="certify: write the certificate document here")
    ap.add_argument("--certificate", default=None, help="certify: verify this certificate document instead")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def load_ring(spec: str, char: int | None) -> RingSpec:
    if spec.startswith("corpus:"):
        return ring_by_id(spec, char or DEFAULT_CHAR)
    path = Path(spec)
    R = parse_ring(path.read_text(), name=path.stem)
    if char is not None and char != R.char:
        R = make_ring(R.vars, [R.fmt(g) for g in R.gens], char, R.model, R.name)
    return R


def _invariants(R: RingSpec, a) -> dict:
    G = tangent_cone(R, a.degree_cap)
    cp = cohen_presentation(R, G)
    reg = castelnuovo_mumford_regularity(G, a.seed).value
    cm = is_cohen_macaulay(G, a.seed).is_cm
    g = gll_estimate(R, a.samples, a.max_param_order, a.seed, G, reg)
    return {"ring": R.name, "char": R.char, "dim": G.dim, "ord": cp.ord, "maxord": cp.maxord,
            "is_ci": cp.is_ci, "t_mark_bound": cp.t_mark_bound, "regularity": reg, "strict_cm": cm,
            "gll": {"value": g.value, "certified": g.certified}, "seeds": [a.seed]}


def _certify(R: RingSpec | None, a) -> tuple[dict, int]:
    if a.certificate:
        cert = cert_mod.certificate_from_json(Path(a.certificate).read_text())
        ver = cert_mod.verify_certificate(cert)
        doc = {"ring": cert.ring.name, "certificate": {"n": cert.n, "d": cert.d, "ok": ver.ok},
               "checks": ver.checks, "errors": ver.errors}
        if ver.ok:
            doc["bound"] = cert_mod.certified_bound(cert, ver)
        return doc, EXIT_OK if ver.ok else EXIT_VIOLATION
    kw = {} if a.degree_cap is None else {"degree_cap": a.degree_cap}
    cert = cert_mod.build_certificate(R, d=a.depth, rng_seed=a.seed, target_n=a.target_n, **kw)
    doc = {"ring": R.name, "char": R.char, "seeds": [a.seed]}
    if not cert.ok:
        doc["certificate"] = {"n": cert.n, "d": a.depth, "ok": False, "failure_step": cert.step,
                              "reason": cert.reason}
        return doc, EXIT_VIOLATION
    text = cert_mod.certificate_to_json(cert)
    if a.out:
        Path(a.out).write_text(text)
    doc["certificate"] = {"n": cert.n, "d": cert.d, "ok": True, "sop": [R.fmt(f) for f in cert.sop],
                          "min_entry_order": cert.summary()["min_entry_order"]}
    if a.verify:
        ver = cert_mod.verify_certificate(cert_mod.certificate_from_json(text))
        doc["certificate"]["ok"] = ver.ok
        doc["verification"] = {"checks": ver.checks, "errors": ver.errors}
        if not ver.ok:
            return doc, EXIT_VIOLATION
        doc["bound"] = cert_mod.certified_bound(cert, ver)
    return doc, EXIT_OK


def run(argv=None) -> tuple[int, dict]:
    """Execute one command; returns ``(exit code, output document)``."""
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
        if a.time_budget is not None and a.time_budget <= 0:
            ap.error("--time-budget must be positive")
        if a.verb != "corpus" and not (a.ring or (a.verb == "certify" and a.certificate)):
            ap.error(f"{a.verb} needs a ring (corpus:<id> or a file)")
    except SystemExit as exc:
        # argparse has printed usage; usage errors count as computation errors (2 is reserved)
        code = EXIT_OK if exc.code in (0, None) else EXIT_ERROR
        return code, {"schema": REPORT_SCHEMA, "error": "usage", "exit_code": code}
    logging.basicConfig(level=logging.INFO if a.verbose else logging.WARNING)
    doc = {"schema": REPORT_SCHEMA, "verb": a.verb}
    try:
        R = load_ring(a.ring, a.char) if a.ring else None
        code = EXIT_OK
        if a.verb == "corpus":
            doc["rings"] = [{"id": f"corpus:{i}", "ring": serialize_ring(ring_by_id(i, a.char or DEFAULT_CHAR))}
                            for i in corpus_ids()]
        elif a.verb == "invariants":
            doc.update(_invariants(R, a))
        elif a.verb == "regularity":
            res = castelnuovo_mumford_regularity(tangent_cone(R, a.degree_cap), a.seed)
            doc.update({"ring": R.name, "char": R.char, "regularity": res.value,
                        "sop": [R.fmt(f) for f in res.sop], "seeds": [a.seed]})
        elif a.verb == "gll":
            g = gll_estimate(R, a.samples, a.max_param_order, a.seed)
            doc.update({"ring": R.name, "char": R.char, "gll": {"value": g.value, "certified": g.certified},
                        "samples": g.samples, "best_sop": [R.fmt(f) for f in g.best_sop], "seeds": [a.seed]})
        elif a.verb == "certify":
            out, code = _certify(R, a)
            doc.update(out)
        elif a.verb == "verify":
            cfg = HarnessConfig(seed=a.seed, gll_samples=a.samples, max_param_order=a.max_param_order,
                                module_samples=a.samples, depth=a.depth, time_budget=a.time_budget,
                                degree_cap=a.degree_cap)
            rep = verify(R, cfg)
            doc.update(rep.to_dict())
            if rep.violations:
                code = EXIT_VIOLATION
            elif rep.errors and not all(e.startswith(("skipped", "partial")) for e in rep.errors.values()):
                code = EXIT_ERROR
        elif a.verb == "oracle":
            rep = cross_check(R, max_degree=a.max_degree, member_degree=min(8, a.max_degree), seed=a.seed)
            doc.update({"ring": R.name, "char": R.char, "max_degree": a.max_degree, "ok": rep.ok,
                        "checks": rep.checks, "mismatches": rep.mismatches, "seeds": [a.seed]})
            if not rep.ok:
                code = EXIT_VIOLATION
    except AssertionError as exc:
        doc["error"] = f"assertion violated: {exc}"
        code = EXIT_VIOLATION
    except Exception as exc:
        doc["error"] = f"{type(exc).__name__}: {exc}"
        code = EXIT_ERROR
    doc["exit_code"] = code
    return code, doc


def _human(doc: dict) -> str:
    lines = []
    for k, v in doc.items():
        if k in ("schema", "exit_code"):
            continue
        if isinstance(v, (dict, list)):
            v = json.dumps(v, default=str)
            if len(v) > 200:
                v = v[:197] + "..."
        lines.append(f"{k}: {v}")
    return "\n".join(lines)


def main(argv=None) -> int:
    ap_json = "--json" in (argv if argv is not None else sys.argv[1:])
    code, doc = run(argv)
    if doc.get("error") == "usage":
        return code
    print(json.dumps(doc, indent=2, default=str) if ap_json else _human(doc))
    return code


if __name__ == "__main__":
    sys.exit(main())
