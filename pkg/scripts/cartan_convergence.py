#!/usr/bin/env python3
"""Finite-difference convergence of d^c+ w+ + d^c- w- on SU(2) x R.

Prints, for a ladder of step sizes, the pluriclosed residual, the fitted
Cartan constant and the ratio against the previous step.
"""
import argparse
import math

from gkgeom import chart as C
from gkgeom import lie as L


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    prev = None
    print(f"{'h':>10} {'residual':>12} {'c':>20} {'log2 ratio':>11}")
    for h in (8e-3, 4e-3, 2e-3, 1e-3):
        fit = L.cartan_form_check(args.samples, C.FDConfig(h=h), seed=args.seed)
        ratio = "" if prev is None else f"{math.log2(prev / fit.dc_sum):11.3f}"
        print(f"{h:10.1e} {fit.dc_sum:12.3e} {fit.c:20.15f} {ratio}")
        prev = fit.dc_sum


if __name__ == "__main__":
    main()
