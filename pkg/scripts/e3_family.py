"""E3(n) = k[[a,b,x,y,z]]/(a^2 - x^n, ab - y^n, b^2 - z^n): Loewy length of the (x,z)-reduction, regularity and gll."""

import argparse
import time

from loewylab.graded import is_cohen_macaulay, tangent_cone
from loewylab.koszul import castelnuovo_mumford_regularity
from loewylab.localring import cohen_presentation, gll_estimate, loewy_length
from loewylab.presentation import make_ring


def e3(n):
    return make_ring(("a", "b", "x", "y", "z"), [f"a^2 - x^{n}", f"a*b - y^{n}", f"b^2 - z^{n}"], name=f"E3({n})")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--samples", type=int, default=20)
    a = ap.parse_args()
    print("n  ll(x,z)  reg  strict_cm  gll  certified  t_mark  seconds")
    for n in a.n:
        t0 = time.monotonic()
        R = e3(n)
        G = tangent_cone(R)
        reg = castelnuovo_mumford_regularity(G).value
        ll = loewy_length(R, [R.poly("x"), R.poly("z")])
        g = gll_estimate(R, a.samples, 3, 0, G, reg)
        cp = cohen_presentation(R, G)
        print(f"{n:<2} {ll:<8} {reg:<4} {str(is_cohen_macaulay(G).is_cm):<10} {g.value:<4} "
              f"{str(g.certified):<10} {cp.t_mark_bound:<7} {time.monotonic() - t0:.1f}")


if __name__ == "__main__":
    main()
