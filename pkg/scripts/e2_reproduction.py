"""Invariants of E2 = k[[x,y,z]]/(x^2 - y^5, xy^2 + yz^3 - z^5) and the distribution of sampled Loewy lengths."""

import argparse
import collections
import json
import time

from loewylab.graded import is_cohen_macaulay, tangent_cone
from loewylab.harness import ring_by_id
from loewylab.koszul import castelnuovo_mumford_regularity
from loewylab.localring import cohen_presentation, gll_estimate


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--max-param-order", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()

    t0 = time.monotonic()
    R = ring_by_id("E2")
    G = tangent_cone(R)
    reg = castelnuovo_mumford_regularity(G, a.seed).value
    cp = cohen_presentation(R, G)
    g = gll_estimate(R, a.samples, a.max_param_order, a.seed, G, reg)
    out = {
        "regularity": reg,
        "strict_cm": is_cohen_macaulay(G, a.seed).is_cm,
        "maxord": cp.maxord,
        "t_mark_bound": cp.t_mark_bound,
        "gll": {"value": g.value, "certified": g.certified},
        "best_sop": [R.fmt(f) for f in g.best_sop],
        "sops_evaluated": g.samples,
        "ll_histogram": dict(sorted(collections.Counter(g.values).items())),
        "seconds": round(time.monotonic() - t0, 1),
    }
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
