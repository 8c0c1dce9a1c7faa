"""Enumerate solutions up to isomorphism and write census records as JSON lines.

    python scripts/run_census.py --max-size 4 --out census.jsonl
"""

import argparse
import collections
import time

from braceforge.census import build_census, write_census
from braceforge.config import Limits


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-size", type=int, default=4)
    ap.add_argument("--cap", type=int, default=10**5, help="largest embedded brace to build")
    ap.add_argument("--out", default="census.jsonl")
    args = ap.parse_args()

    limits = Limits(cap=args.cap)
    with open(args.out, "w") as fh:
        print(f"{'m':>2} {'classes':>8} {'mpl':>22} {'not right nil':>14} {'two-sided':>10} {'skipped':>8} {'sec':>6}")
        for m in range(1, args.max_size + 1):
            t0 = time.perf_counter()
            records = build_census(m, limits)
            write_census(records, fh)
            levels = collections.Counter(str(r.mpl) for r in records)
            not_rn = sum(r.right_nilpotent is False for r in records)
            two = sum(bool(r.two_sided) for r in records)
            skipped = sum(r.error is not None for r in records)
            dt = time.perf_counter() - t0
            print(f"{m:>2} {len(records):>8} {dict(sorted(levels.items()))!s:>22} {not_rn:>14} {two:>10} {skipped:>8} {dt:>6.1f}")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
