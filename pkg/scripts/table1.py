#!/usr/bin/env python3
"""Coin-tossing experiments that barely reject a fair coin at the 5% level.

Prints the uniform-prior BF01, the prior-free MLE bound and the implied
posterior floor for each row, plus the same rows under a few Beta priors.
"""
import argparse

from statbf.bfcore import posterior_prob_h0
from statbf.binomial import ELS_EXPERIMENTS, BetaPrior, BinomialExperiment, binom_bf, binom_mle_bound

PRIORS = [BetaPrior(1, 1), BetaPrior(0.5, 0.5), BetaPrior(2, 2), BetaPrior(10, 10)]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rows", default=";".join(f"{n},{r}" for n, r in ELS_EXPERIMENTS))
    args = ap.parse_args()
    rows = [tuple(int(v) for v in pair.split(",")) for pair in args.rows.split(";")]

    head = f"{'n':>7} {'r':>6} " + " ".join(f"Beta({p.a:g},{p.b:g})".rjust(12) for p in PRIORS)
    print(head + f" {'MLE bound':>10} {'Pr(H0|y)>=':>11}")
    for n, r in rows:
        exp = BinomialExperiment(n, r)
        bfs = " ".join(f"{binom_bf(exp, p).bf01:12.4f}" for p in PRIORS)
        bound = binom_mle_bound(exp)
        print(f"{n:7d} {r:6d} {bfs} {bound:10.4f} {posterior_prob_h0(bound):11.4f}")


if __name__ == "__main__":
    main()
