"""Compare term-by-term and chirp-transform maxima over all primes up to a bound.

    python3 scripts/strategy_agreement.py [--p-max 1999] [--cases 20] [--workers 1] [--out agreement.csv]
"""

import argparse
import time

from expsieve.experiments import AGREEMENT_COLUMNS, strategy_agreement
from expsieve.report import write_csv


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p-max", type=int, default=1999)
    ap.add_argument("--cases", type=int, default=20)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", default="agreement.csv")
    args = ap.parse_args()

    t0 = time.perf_counter()
    rows = strategy_agreement(args.p_max, (2, 3, 10), args.cases, args.seed, args.workers)
    secs = time.perf_counter() - t0
    a_diff = sum(r[3] != r[5] for r in rows)
    worst = max(abs(r[4] - r[6]) / r[4] for r in rows if r[4] > 0)
    print(f"{len(rows)} comparisons in {secs:.1f}s: {a_diff} argmax differences, worst relative gap {worst:.2e}")
    write_csv(args.out, "agreement", AGREEMENT_COLUMNS, rows)


if __name__ == "__main__":
    main()
