"""Radical ring -> two-sided brace -> ring, for strictly upper triangular matrices."""

import argparse
import time

import numpy as np

from braceforge import brace as br
from braceforge.ring import brace_from_radical_ring, ring_from_two_sided_brace, strictly_upper_triangular


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cases", default="3:2,3:3,4:2", help="comma separated size:k pairs")
    args = ap.parse_args()
    for case in args.cases.split(","):
        size, k = (int(t) for t in case.split(":"))
        t0 = time.perf_counter()
        R = strictly_upper_triangular(size, k)
        B = brace_from_radical_ring(R)
        method = br.validate_brace(B)["method"]
        two, _ = br.is_two_sided(B)
        back = ring_from_two_sided_brace(B)
        same = np.array_equal(back.product_table(), R.product_table())
        soc = br.socle(B).order
        chain, _ = br.right_series(B)
        print(
            f"{size}x{size} over Z/{k}: order {B.order}, validated ({method}), two-sided {two}, "
            f"roundtrip {same}, socle {soc}, right series {[c.order for c in chain]}, "
            f"{time.perf_counter() - t0:.1f}s"
        )


if __name__ == "__main__":
    main()
