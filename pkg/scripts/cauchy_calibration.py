#!/usr/bin/env python3
"""Interval for t implied by a Cauchy prior, and the normal spread A that matches it."""
import argparse

from statbf.normal_means import (
    CauchyPrior,
    NormalMeansProblem,
    calibrate_cauchy,
    cauchy_bf_asymptotic,
    cauchy_bf_quadrature,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--coverage", type=float, default=0.95)
    ap.add_argument("--t", type=float, default=2.0)
    args = ap.parse_args()

    print(f"{'n':>8} {'halfwidth':>10} {'A equiv':>10} {'BF quad':>9} {'BF asym':>9} {'ratio':>7}")
    for n in (1, 4, 10, 100, 1000, 10_000, 1_000_000):
        w, A = calibrate_cauchy(n, 1.0, args.coverage)
        quad = cauchy_bf_quadrature(NormalMeansProblem(args.t, n), CauchyPrior(0.0, 1.0)).bf01
        asym = cauchy_bf_asymptotic(args.t, n).bf01
        print(f"{n:8d} {w:10.4g} {A:10.4g} {quad:9.4f} {asym:9.4f} {quad / asym:7.4f}")


if __name__ == "__main__":
    main()
