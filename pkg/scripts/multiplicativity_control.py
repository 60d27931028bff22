#!/usr/bin/env python3
"""Multiplicativity defect of the annulus form: boundary-row pairs vs free pairs.

The first column should sit at round-off; the free pairs carry the fusion term
and are expected to show a large defect.
"""
import argparse

import numpy as np

from gkgeom import annulus as An


def free_pair(rng, st):
    r = An.random_rep(rng)
    d, e = An.random_tangent(rng), An.random_tangent(rng)
    if st == "h":
        return r, An.composable_h(rng, r), d, An.composable_tangent_h(rng, d), e, An.composable_tangent_h(rng, e)
    return r, An.composable_v(rng, r), d, An.composable_tangent_v(rng, d), e, An.composable_tangent_v(rng, e)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pairs", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    for st in "hv":
        for lab in An.LABEL_NAMES:
            con = []
            for _ in range(args.pairs // len(An.LABEL_NAMES) + 1):
                r, rp, (d, dp), (e, ep) = An.constrained_pair(rng, st, lab)
                con.append(An.multiplicativity_residual(r, rp, d, dp, e, ep, st))
            print(f"{st} {lab:4s} boundary-row max defect {max(con):.2e}")
        free = [An.multiplicativity_residual(*free_pair(rng, st), st) for _ in range(args.pairs)]
        print(f"{st} free pairs: median defect {np.median(free):.2e}, min {min(free):.2e}")


if __name__ == "__main__":
    main()
