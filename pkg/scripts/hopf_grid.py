#!/usr/bin/env python3
"""Write the Hopf potential on a square grid and summarise the generating residual."""
import argparse

import numpy as np

from gkgeom import hopf as H


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=int, default=20)
    ap.add_argument("--out", default="hopf_grid.csv")
    args = ap.parse_args()
    pts = H.default_grid(args.grid)
    n = H.write_grid_csv(args.out, pts)
    rep = H.generating_check(pts)
    print(f"wrote {n} rows to {args.out}")
    print(f"generating residual: max {rep.max_residual:.2e}, median {np.median(rep.per_point):.2e}")


if __name__ == "__main__":
    main()
