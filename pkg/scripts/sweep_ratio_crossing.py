#!/usr/bin/env python3
"""Sweep admissible characteristics and report where the ratio crosses 9.

Example:
    python scripts/sweep_ratio_crossing.py --q 3 --n 3 --p-max 2000
"""

import argparse

from bmycover import search_primes
from bmycover.serialize import decimal_approx


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--q", type=int, default=3)
    parser.add_argument("--n", type=int, default=3)
    parser.add_argument("--p-min", type=int, default=2)
    parser.add_argument("--p-max", type=int, default=2000)
    args = parser.parse_args()

    rows = search_primes(args.q, args.n, args.p_min, args.p_max)
    crossing = None
    print(f"{'p':>8} {'ratio':>14} {'>9':>5} {'margin':>8}")
    for row in rows:
        print(
            f"{row.p:>8} {decimal_approx(row.ratio):>14}"
            f" {str(row.exceeds_nine).lower():>5} {row.bigness_margin:>8}"
        )
        if crossing is None and row.exceeds_nine:
            crossing = row
    if crossing is None:
        print("\nno admissible characteristic in range exceeds 9")
    else:
        print(
            f"\nfirst ratio above 9 at p={crossing.p}:"
            f" {crossing.ratio} ~ {decimal_approx(crossing.ratio)}"
        )


if __name__ == "__main__":
    main()
