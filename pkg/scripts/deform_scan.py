#!/usr/bin/env python3
"""Scan the deformation parameter t for the Gaussian potential on flat C x C.

For each t: worst verify_gk_chart residual, smallest metric eigenvalue, and the
pluriclosed residual of the same-sign variant (for comparison).
"""
import argparse

import numpy as np

from gkgeom import chart as C


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--eps", type=float, default=0.1)
    ap.add_argument("--tmax", type=float, default=2.0)
    ap.add_argument("--steps", type=int, default=9)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = C.FDConfig(h=1e-2)
    base = C.flat_commuting_base()
    pts = np.random.default_rng(args.seed).uniform(-1.2, 1.2, (8, 4))
    f = C.gaussian_potential(args.eps)
    print(f"{'t':>8} {'gk residual':>12} {'min eig':>10} {'same-sign':>12}")
    for t in np.linspace(0, args.tmax, args.steps):
        res = C.commuting_deform(f, float(t), base, pts, cfg)
        print(f"{t:8.3f} {res.report.worst:12.3e} {res.min_eig:10.4f} {res.same_sign_pluriclosed:12.3e}")


if __name__ == "__main__":
    main()
