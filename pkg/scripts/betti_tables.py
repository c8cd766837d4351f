#!/usr/bin/env python3
"""Print graded Betti tables for the bundled reference systems.

Rows are homological degree p, columns internal degree q.  Useful for
eyeballing how the elliptic normal curves sharpen the syzygy bound and
what the product Kummer surface actually looks like.
"""

import argparse

from kumsyz.exactcore import PrimeField
from kumsyz.ellcurve import Curve
from kumsyz.avkummer import AbelianProduct, ProductBundle
from kumsyz.gradedring import SectionSystem
from kumsyz.syzygy import betti_table


def show(label, system, p_max, q_max):
    bt = betti_table(system, p_max, q_max)
    print(f"\n{label}  (dim V = {bt.dim_v}, hilbert {list(bt.hilbert)})")
    header = "p\\q " + "".join(f"{q:>5}" for q in range(q_max + 1))
    print(header)
    for p, row in enumerate(bt.rows()):
        cells = "".join(f"{v:>5}" if v else "    ." for v in row)
        print(f"{p:>3} {cells}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--field", type=int, default=10007)
    args = ap.parse_args()
    F = PrimeField(args.field)
    E1, E2 = Curve(F, 1, 1), Curve(F, 1, 2)
    X1 = AbelianProduct.of([E1])
    X2 = AbelianProduct.of([E1, E2])

    for d in (3, 4, 5):
        sys_d = SectionSystem(X1, ProductBundle.from_degrees(X1, (d,)),
                              kind="ambient")
        show(f"elliptic normal curve, degree {d}", sys_d, d - 1, d + 1)

    tw = SectionSystem(X1, ProductBundle.from_degrees(X1, (3,)),
                       kind="kummer")
    show("g = 1 Kummer of a degree-3 bundle (twisted cubic)", tw, 3, 4)

    kq = SectionSystem(X2, ProductBundle.from_degrees(X2, (1, 1)),
                       kind="kummer")
    show("(1,1)-product Kummer surface in P^3", kq, 2, 5)


if __name__ == "__main__":
    main()
