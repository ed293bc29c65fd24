"""Full verification report for every corpus ring, written as JSON."""

import argparse
import json

from loewylab.harness import HarnessConfig, verify_corpus


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", default="corpus_report.json")
    a = ap.parse_args()
    reps = verify_corpus(HarnessConfig(seed=a.seed), workers=a.workers)
    with open(a.out, "w") as fh:
        json.dump([r.to_dict() for r in reps], fh, indent=1, default=str)
    for r in reps:
        print(f"{r.ring:12} reg={r.regularity} gll={r.gll} modules={len(r.modules)} "
              f"certificate={r.certificate} violations={len(r.violations)}")


if __name__ == "__main__":
    main()
