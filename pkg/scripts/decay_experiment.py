"""Normalized V across X for the pinned seeded family.

    python3 scripts/decay_experiment.py [--X 500 1000 2000 4000] [--seed 2017] [--workers 1] [--out decay.csv]

T = ceil(X^1.05), S = ceil(T^1.5), Delta = ceil(sqrt X), unit weights,
random T-subset of [0, S].  Prints the table and writes plot-ready CSV.
"""

import argparse

from expsieve.report import write_csv
from expsieve.stats import decay_experiment, thm2_bound


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--X", type=int, nargs="+", default=[500, 1000, 2000, 4000])
    ap.add_argument("--lam", type=int, default=2)
    ap.add_argument("--seed", type=int, default=2017)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", default="decay.csv")
    args = ap.parse_args()

    rows = decay_experiment(tuple(args.X), args.lam, args.seed, workers=args.workers)
    table = []
    print(f"{'X':>6} {'T':>6} {'S':>8} {'|E|':>5} {'V/(|E|T^2)':>12} {'thm2 rhs/XT^2':>14}")
    for r in rows:
        thm2 = thm2_bound(r.X, r.T, r.S, 0.1).rhs_value / (r.X * r.T**2)
        print(f"{r.X:>6} {r.T:>6} {r.S:>8} {r.n_primes:>5} {r.ratio:>12.6g} {thm2:>14.6g}")
        table.append((r.X, r.T, r.S, r.Delta, r.n_primes, r.value_V, r.value_W, r.trivial_bound, r.ratio, thm2))
    cols = ["X", "T", "S", "Delta", "n_primes", "value_V", "value_W", "trivial_bound", "ratio", "thm2_over_trivial"]
    write_csv(args.out, "decay", cols, table)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
