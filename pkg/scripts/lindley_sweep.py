#!/usr/bin/env python3
"""BF01 at a fixed p-value as the sample size grows (sigma = tau)."""
import argparse

import numpy as np

from statbf.normal_means import NormalMeansProblem, NormalPrior, T_ONE_PERCENT, approx_bf, lindley_sweep
from statbf.numerics import two_sided_p_value


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t", type=float, default=T_ONE_PERCENT)
    ap.add_argument("--max-exp", type=int, default=8, help="largest n is 10^max_exp")
    args = ap.parse_args()

    ns = np.unique(np.logspace(0, args.max_exp, 4 * args.max_exp + 1).astype(int))
    print(f"t = {args.t}, two-sided p = {two_sided_p_value(args.t):.4g}")
    print(f"{'n':>11} {'A':>12} {'exact BF01':>11} {'approx BF01':>12}")
    for row in lindley_sweep(args.t, 1.0, ns):
        approx = approx_bf(NormalMeansProblem(args.t, row.n), NormalPrior()).bf01
        print(f"{row.n:11d} {row.A:12.4g} {row.bf01:11.4f} {approx:12.4f}")


if __name__ == "__main__":
    main()
