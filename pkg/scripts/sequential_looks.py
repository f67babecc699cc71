#!/usr/bin/env python3
"""Repeated looks at a true null: classical rejection vs Bayes factor crossing."""
import argparse

from statbf.simulate import sequential_demo


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--looks", default="1,3,10,30,100,300,1000,3000")
    ap.add_argument("--reps", type=int, default=10_000)
    ap.add_argument("--alpha", type=float, default=0.05)
    ap.add_argument("--bf-threshold", type=float, default=10.0)
    ap.add_argument("--seed", type=int, default=20180801)
    args = ap.parse_args()

    print(f"alpha = {args.alpha}, stop when BF01 < 1/{args.bf_threshold:g}, {args.reps} streams")
    print(f"{'looks':>6} {'classical':>10} {'Bayes':>8}")
    for looks in (int(x) for x in args.looks.split(",")):
        res = sequential_demo(looks, args.alpha, args.bf_threshold, args.reps, args.seed)
        print(f"{looks:6d} {res.freq_ever_reject_classical:10.4f} {res.freq_ever_cross_bayes:8.4f}")


if __name__ == "__main__":
    main()
