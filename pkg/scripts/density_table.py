"""Share of primes with large multiplicative order, and the small-order count.

    python3 scripts/density_table.py [--lam 2] [--X 1000 10000 100000 1000000]

For each X: |{p <= X : t_p >= sqrt X}| * log X / X, and the number of
p <= X with t_p <= Z against Z(Z+1)/2 for Z = 8, 16, 32, 64.
"""

import argparse

from expsieve.primes import build_order_db, count_small_orders, density_check


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--lam", type=int, default=2)
    ap.add_argument("--X", type=int, nargs="+", default=[10**3, 10**4, 10**5, 10**6])
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    db = build_order_db(args.lam, max(args.X), workers=args.workers)
    zs = (8, 16, 32, 64)
    print(f"{'X':>9} {'density':>9} " + " ".join(f"{'Z=' + str(z):>10}" for z in zs))
    for X in args.X:
        sub = db.subset(db.p <= X)
        sub.X = X
        small = " ".join(f"{count_small_orders(sub, z):>4}/{z * (z + 1) // 2:<5}" for z in zs)
        print(f"{X:>9} {density_check(sub):>9.4f} {small}")


if __name__ == "__main__":
    main()
