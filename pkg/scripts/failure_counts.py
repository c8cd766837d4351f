#!/usr/bin/env python3
"""Tabulate multiplication-failure counts over growing finite fields.

Contrasts the base-point-free (2,2) polarization (failure locus of
codimension >= 2: counts stay bounded) against the (1,1) product
polarization whose base divisor puts the failures on two full axes of
twists.  Writes a CSV to stdout.
"""

import argparse

from kumsyz.exactcore import PrimeField
from kumsyz.ellcurve import Curve
from kumsyz.avkummer import AbelianProduct, ProductBundle
from kumsyz.multlab import MultLab, sweep_alpha


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--fields", type=int, nargs="+", default=[11, 17, 23])
    ap.add_argument("--h", type=int, default=2)
    args = ap.parse_args()
    print("degrees,q,tuples,failures")
    for degs in ((2, 2), (1, 1)):
        for q in args.fields:
            F = PrimeField(q)
            X = AbelianProduct.of([Curve(F, 1, 1), Curve(F, 1, 2)])
            lab = MultLab(X, ProductBundle.from_degrees(X, degs))
            rep = sweep_alpha(lab, "mplus", 1, args.h, "exhaustive")
            print(f"\"{degs}\",{q},{rep.total},{rep.failure_count}")


if __name__ == "__main__":
    main()
