"""Build, serialize and re-verify lifting certificates at n = reg on the strict Cohen-Macaulay corpus rings,
then try the targets n = 1..6 on E2."""

import argparse
import pathlib
import time

from loewylab.certify import (
    build_certificate,
    certificate_from_json,
    certificate_to_json,
    certified_bound,
    verify_certificate,
)
from loewylab.graded import is_cohen_macaulay, tangent_cone
from loewylab.harness import corpus_ids, ring_by_id
from loewylab.koszul import castelnuovo_mumford_regularity
from loewylab.stdbasis import ResourceError


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--depth", type=int, default=4)
    ap.add_argument("--e2-depth", type=int, default=2, help="depth for the E2 sweep (resolving k over E2 grows fast)")
    ap.add_argument("--out", default=None, help="directory for the certificate documents")
    a = ap.parse_args()
    out = pathlib.Path(a.out) if a.out else None
    if out:
        out.mkdir(parents=True, exist_ok=True)

    for rid in corpus_ids():
        R = ring_by_id(rid)
        G = tangent_cone(R)
        if not is_cohen_macaulay(G).is_cm:
            continue
        reg = castelnuovo_mumford_regularity(G).value
        t0 = time.monotonic()
        cert = build_certificate(R, d=a.depth, target_n=reg)
        text = certificate_to_json(cert)
        ver = verify_certificate(certificate_from_json(text))
        if out:
            (out / f"{rid}.json").write_text(text)
        stmt = certified_bound(cert, ver)["statement"] if ver.ok else ver.errors
        print(f"{rid:5} reg={reg} ok={ver.ok} {time.monotonic() - t0:5.1f}s  {stmt}")

    E2 = ring_by_id("E2")
    for n in range(1, 7):
        try:
            res = build_certificate(E2, d=a.e2_depth, target_n=n, method="exact")
        except ResourceError as exc:
            print(f"E2    target n={n}: resource cap ({exc})")
            continue
        if res.ok:
            print(f"E2    target n={n}: certificate to depth {res.d}, verified={verify_certificate(res).ok}")
        else:
            print(f"E2    target n={n}: failure at step {res.step}: {res.reason}")


if __name__ == "__main__":
    main()
