"""Run the brace property checkers over the embedded braces of a census.

Reads solutions from a census file (see run_census.py) or enumerates them.
One line per solution; exits non-zero if any check fails.
"""

import argparse
import sys

from braceforge import brace as br
from braceforge.census import enumerate_solutions, read_census_solutions
from braceforge.config import Limits
from braceforge.errors import CapExceeded
from braceforge.solution import mpl
from braceforge.structure_group import embed_finite_brace


def solutions(args):
    if args.census:
        with open(args.census) as fh:
            return read_census_solutions(fh)
    return [S for m in range(1, args.max_size + 1) for S in enumerate_solutions(m)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--census", help="census JSON lines file")
    ap.add_argument("--max-size", type=int, default=4)
    ap.add_argument("--cap", type=int, default=10**5)
    args = ap.parse_args()
    limits = Limits(cap=args.cap)

    failures = 0
    for i, S in enumerate(solutions(args)):
        try:
            B = embed_finite_brace(S, limits.cap).brace
        except CapExceeded as exc:
            print(f"{i:3d} m={S.size} skipped: brace order {exc.witness['order']}")
            continue
        p5 = br.check_proposition_five(B, limits)
        row = {"prop5": p5["holds"]}
        if B.order <= limits.table_limit:
            row["socle-commutator"] = br.check_socle_commutator(B)
            row["retract-iso"] = br.retract_iso_check(B, limits)
        row["two-sided"] = br.is_two_sided(B, limits)[0]
        failures += sum(not v for k, v in row.items() if k != "two-sided")
        flags = " ".join(f"{k}={'ok' if v else 'NO'}" for k, v in row.items())
        print(f"{i:3d} m={S.size} |B|={B.order:<5} mpl={mpl(S)!s:<8} series={p5['right_series_orders']} {flags}")
    print(f"{failures} failed checks")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
