"""Exhaustive enumeration of small solutions and the census records built on them."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, TextIO

from .brace import left_series, right_series, two_sided_witness
from .config import DEFAULT_LIMITS, Limits
from .errors import BraceForgeError, CapExceeded, MalformedInput
from .solution import (
    INFINITE,
    Solution,
    canonical_form,
    mpl,
    solution_from_json,
    solution_to_json,
    validate_solution,
)
from .structure_group import embed_finite_brace, socle_index

MAX_ENUMERATION_SIZE = 5


def _compose(p: tuple, q: tuple) -> tuple:
    return tuple(p[i] for i in q)


def _invert(p: tuple) -> tuple:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def _propagate(rows: dict) -> dict | None:
    """Close a partial assignment of rows under the row identity, or ``None`` on conflict.

    For every solution ``lam_x lam_u = lam_y lam_v`` with ``u = lam_x^-1(y)``
    and ``v = lam_y^-1(x)`` (the first coordinate of the braid relation after
    substituting ``y -> lam_x(y)``). When three of the four rows are known
    the fourth is forced.
    """
    rows = dict(rows)
    inverses = {x: _invert(p) for x, p in rows.items()}
    changed = True
    while changed:
        changed = False
        for x in list(rows):
            for y in list(rows):
                u, v = inverses[x][y], inverses[y][x]
                lx, ly = rows[x], rows[y]
                if u in rows and v in rows:
                    if _compose(lx, rows[u]) != _compose(ly, rows[v]):
                        return None
                elif u in rows:
                    rows[v] = _compose(inverses[y], _compose(lx, rows[u]))
                    inverses[v] = _invert(rows[v])
                    changed = True
                elif v in rows:
                    rows[u] = _compose(inverses[x], _compose(ly, rows[v]))
                    inverses[u] = _invert(rows[u])
                    changed = True
    return rows


def _iter_labelled(m: int) -> Iterable[Solution]:
    perms = list(itertools.permutations(range(m)))

    def place(rows: dict):
        free = [x for x in range(m) if x not in rows]
        if not free:
            try:
                yield validate_solution([rows[x] for x in range(m)])
            except BraceForgeError:
                pass
            return
        t = free[0]
        for p in perms:
            nxt = _propagate({**rows, t: p})
            if nxt is not None:
                yield from place(nxt)

    yield from place({})


def enumerate_solutions(m: int, up_to_iso: bool = True, max_size: int = MAX_ENUMERATION_SIZE) -> list:
    """All solutions on ``m`` points, sorted by their ``lam`` tables.

    With ``up_to_iso`` one solution per isomorphism class is kept, namely the
    lexicographically least relabelling.
    """
    if not 1 <= m <= max_size:
        raise CapExceeded(f"enumeration supports 1 <= m <= {max_size}", {"m": m})
    found = list(_iter_labelled(m))
    if up_to_iso:
        forms = sorted({canonical_form(S) for S in found})
        found = [validate_solution([f[i * m : (i + 1) * m] for i in range(m)]) for f in forms]
    return sorted(found, key=lambda S: S.lam)


@dataclass(frozen=True)
class CensusRecord:
    solution: Solution
    mpl: object
    perm_group_order: int
    embedded_brace_order: int
    right_nilpotent: bool | None
    left_nilpotent: bool | None
    two_sided: bool | None
    error: str | None = None

    def to_json(self) -> dict:
        return {
            "solution": solution_to_json(self.solution),
            "mpl": "infinite" if self.mpl is INFINITE else self.mpl,
            "perm_group_order": self.perm_group_order,
            "embedded_brace_order": self.embedded_brace_order,
            "right_nilpotent": self.right_nilpotent,
            "left_nilpotent": self.left_nilpotent,
            "two_sided": self.two_sided,
            "error": self.error,
        }


def census_record(S: Solution, limits: Limits = DEFAULT_LIMITS) -> CensusRecord:
    n = socle_index(S, limits.cap)
    order = max(n, 2) ** S.size
    right = left = two = None
    error = None
    try:
        B = embed_finite_brace(S, limits.cap).brace
    except CapExceeded as exc:
        error = exc.code
    else:
        right = right_series(B)[1]
        left = left_series(B)[1]
        two = two_sided_witness(B, limits) is None
    return CensusRecord(S, mpl(S), n, order, right, left, two, error)


def build_census(m: int, limits: Limits = DEFAULT_LIMITS) -> list:
    return [census_record(S, limits) for S in enumerate_solutions(m, up_to_iso=True)]


def write_census(records: Iterable[CensusRecord], fh: TextIO) -> None:
    for rec in records:
        fh.write(json.dumps(rec.to_json()) + "\n")


def read_census_solutions(fh: TextIO) -> list:
    out = []
    for line in fh:
        line = line.strip()
        if line:
            try:
                out.append(solution_from_json(json.loads(line)["solution"]))
            except (KeyError, json.JSONDecodeError) as exc:
                raise MalformedInput(f"bad census line: {exc}") from exc
    return out
