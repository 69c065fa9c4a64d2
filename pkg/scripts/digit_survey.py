"""Primes dividing some member of N(a; S), as the number of free bits grows.

    python3 scripts/digit_survey.py [--X 2000] [--T-max 14]

Pattern: a = 0, free bits at odd positions 1, 3, ..., 2T-1 (0-indexed).
Reports the survey count, its share of pi(X), and the count over T.
"""

import argparse

from expsieve.digits import DigitPattern, omega_product


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--X", type=int, default=2000)
    ap.add_argument("--T-max", type=int, default=14)
    args = ap.parse_args()

    print(f"{'T':>3} {'omega>=':>8} {'share':>7} {'omega/T':>8}")
    for T in range(1, args.T_max + 1):
        pat = DigitPattern(2 * T, 0, tuple(range(1, 2 * T, 2)))
        rep = omega_product(pat, args.X, mode="survey")
        print(f"{T:>3} {rep.omega:>8} {rep.fraction:>7.3f} {rep.omega / T:>8.2f}")


if __name__ == "__main__":
    main()
