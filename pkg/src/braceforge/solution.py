"""Finite involutive non-degenerate set-theoretic solutions of the YBE.

A solution on ``{0, ..., m-1}`` is stored as two ``m x m`` tables with
``r(x, y) = (lam[x][y], rho[x][y])``. Only ``lam`` is free data: for an
involutive solution ``rho[x][y]`` is the preimage of ``x`` under the row
``lam[lam[x][y]]``, and it is always recomputed from ``lam``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    InternalInconsistency,
    MalformedInput,
    NotABijection,
    NotInvariant,
    NotInvolutive,
    SizeMismatch,
    YBEViolation,
)
from .permgrp import Permutation


class _Infinite:
    """Level marker for solutions whose retractions never reach one point."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITE"

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()


@dataclass(frozen=True, eq=False)
class Solution:
    size: int
    lam: tuple
    rho: tuple

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Solution) and self.lam == other.lam

    def __hash__(self) -> int:
        return hash(self.lam)

    def __call__(self, x: int, y: int) -> tuple:
        return self.lam[x][y], self.rho[x][y]

    def is_trivial(self) -> bool:
        return all(row == tuple(range(self.size)) for row in self.lam)

    def __repr__(self) -> str:
        return f"Solution(size={self.size}, lam={[list(r) for r in self.lam]})"


@dataclass(frozen=True)
class RetractQuotient:
    parent_size: int
    class_of: tuple
    retracted: Solution


def _check_square(table, name: str) -> np.ndarray:
    try:
        arr = np.asarray(table, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise MalformedInput(f"{name} is not an integer table") from exc
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise MalformedInput(f"{name} must be a non-empty square table, got shape {arr.shape}")
    m = arr.shape[0]
    if arr.min() < 0 or arr.max() >= m:
        raise MalformedInput(f"{name} has entries outside 0..{m - 1}")
    return arr


def derive_rho(lam: np.ndarray) -> np.ndarray:
    """``rho[x][y] = lam_u^{-1}(x)`` with ``u = lam[x][y]``; rows of ``lam`` must be bijections."""
    m = lam.shape[0]
    inv = np.empty_like(lam)
    rows = np.arange(m)[:, None]
    inv[rows, lam] = np.arange(m)[None, :]
    xs = np.broadcast_to(np.arange(m)[:, None], (m, m))
    return inv[lam, xs]


def _first_bad(mask: np.ndarray) -> tuple:
    return tuple(int(i) for i in np.argwhere(mask)[0])


def _ybe_witness(L: np.ndarray, R: np.ndarray, chunk: int) -> tuple | None:
    m = L.shape[0]
    y = np.arange(m)[None, :, None]
    z = np.arange(m)[None, None, :]
    for start in range(0, m, chunk):
        x = np.arange(start, min(start + chunk, m))[:, None, None]
        # r12 r23 r12
        a1, b1 = L[x, y], R[x, y]
        b2, c2 = L[b1, z], R[b1, z]
        lhs = (L[a1, b2], R[a1, b2], c2)
        # r23 r12 r23
        u, v = L[y, z], R[y, z]
        p, q = L[x, u], R[x, u]
        rhs = (p, L[q, v], R[q, v])
        bad = (lhs[0] != rhs[0]) | (lhs[1] != rhs[1]) | (lhs[2] != rhs[2])
        if bad.any():
            i, j, k = _first_bad(bad)
            return (start + i, j, k)
    return None


def validate_solution(left_action, right_action=None) -> Solution:
    """Check non-degeneracy, involutivity and the braid relation exhaustively.

    ``right_action`` may be omitted, in which case it is derived from
    ``left_action``; a supplied table is verified against the derived one.
    """
    L = _check_square(left_action, "left_action")
    m = L.shape[0]
    ids = np.arange(m)
    for x in range(m):
        if not np.array_equal(np.sort(L[x]), ids):
            raise NotABijection(f"row {x} of left_action is not a bijection", {"x": x, "row": L[x].tolist()})
    derived = derive_rho(L)
    if right_action is None:
        R = derived
    else:
        R = _check_square(right_action, "right_action")
        if R.shape != L.shape:
            raise MalformedInput("left_action and right_action have different sizes")
    for y in range(m):
        if not np.array_equal(np.sort(R[:, y]), ids):
            raise NotABijection(f"column {y} of right_action is not a bijection", {"y": y})
    # involutivity: r(r(x, y)) == (x, y)
    xs, ys = np.meshgrid(ids, ids, indexing="ij")
    back_l, back_r = L[L, R], R[L, R]
    bad = (back_l != xs) | (back_r != ys)
    if bad.any():
        x, y = _first_bad(bad)
        raise NotInvolutive(f"r(r({x},{y})) != ({x},{y})", {"pair": [x, y]})
    chunk = max(1, min(m, 2_000_000 // (m * m)))
    witness = _ybe_witness(L, R, chunk)
    if witness is not None:
        raise YBEViolation(f"braid relation fails at {witness}", {"triple": list(witness)})
    return Solution(m, tuple(map(tuple, L.tolist())), tuple(map(tuple, R.tolist())))


def audit_solution(left_action, right_action=None) -> dict:
    """Every failed condition with its first witness (empty dict for a solution).

    Unlike ``validate_solution`` this does not stop at the first failure.
    Rows of ``left_action`` must be bijections for ``rho`` to be derived.
    """
    L = _check_square(left_action, "left_action")
    m = L.shape[0]
    ids = np.arange(m)
    report: dict = {}
    bad_rows = [x for x in range(m) if not np.array_equal(np.sort(L[x]), ids)]
    if bad_rows:
        report["NotABijection"] = {"row": bad_rows[0]}
        return report
    R = derive_rho(L) if right_action is None else _check_square(right_action, "right_action")
    bad_cols = [y for y in range(m) if not np.array_equal(np.sort(R[:, y]), ids)]
    if bad_cols:
        report["NotABijection"] = {"column": bad_cols[0]}
    xs, ys = np.meshgrid(ids, ids, indexing="ij")
    bad = (L[L, R] != xs) | (R[L, R] != ys)
    if bad.any():
        report["NotInvolutive"] = {"pair": list(_first_bad(bad))}
    witness = _ybe_witness(L, R, max(1, min(m, 2_000_000 // (m * m))))
    if witness is not None:
        report["YBEViolation"] = {"triple": list(witness)}
    return report


def trivial_solution(m: int) -> Solution:
    if m < 1:
        raise MalformedInput("size must be positive")
    row = tuple(range(m))
    return Solution(m, (row,) * m, tuple((x,) * m for x in range(m)))


def permutation_generators(S: Solution) -> list:
    return [Permutation(row) for row in S.lam]


def _classes_by_key(keys: Sequence) -> tuple:
    """Class labels numbered by first appearance."""
    labels: dict = {}
    return tuple(labels.setdefault(k, len(labels)) for k in keys)


def induced_solution(class_of: Sequence[int], points: Sequence[int], left, right) -> Solution:
    """Solution induced on classes by ``left(x, y)`` and ``right(x, y)``.

    Every pair drawn from ``points`` is visited and must land in the same
    class pair as the first pair seen from the same two classes. Passing one
    point per class skips the well-definedness check.
    """
    k = max(class_of) + 1
    L = [[-1] * k for _ in range(k)]
    R = [[-1] * k for _ in range(k)]
    for x in points:
        cx = class_of[x]
        for y in points:
            cy = class_of[y]
            a, b = class_of[left(x, y)], class_of[right(x, y)]
            if L[cx][cy] == -1:
                L[cx][cy], R[cx][cy] = a, b
            elif (L[cx][cy], R[cx][cy]) != (a, b):
                raise InternalInconsistency(
                    "retraction is not well defined on classes", {"pair": [x, y]}
                )
    return validate_solution(L, R)


def retract(S: Solution) -> RetractQuotient:
    class_of = _classes_by_key(S.lam)
    retracted = induced_solution(
        class_of, range(S.size), lambda x, y: S.lam[x][y], lambda x, y: S.rho[x][y]
    )
    return RetractQuotient(S.size, class_of, retracted)


def mpl(S: Solution):
    """Multipermutation level, or ``INFINITE`` if retraction stalls above one point."""
    level = 0
    while S.size > 1:
        nxt = retract(S).retracted
        if nxt.size == S.size:
            return INFINITE
        S = nxt
        level += 1
    return level


def relabel(S: Solution, phi: Sequence[int]) -> Solution:
    """The solution transported along the bijection ``x -> phi[x]``."""
    m = S.size
    L = [[0] * m for _ in range(m)]
    for x in range(m):
        for y in range(m):
            L[phi[x]][phi[y]] = phi[S.lam[x][y]]
    return validate_solution(L)


def _row_invariants(S: Solution) -> list:
    """Isomorphism-invariant label of each point."""
    counts: dict = {}
    for row in S.lam:
        counts[row] = counts.get(row, 0) + 1
    inv = []
    for x, row in enumerate(S.lam):
        perm = Permutation(row)
        cycle_type = _cycle_type(perm)
        fixed_by = sum(1 for r in S.lam if r[x] == x)
        inv.append((cycle_type, counts[row], fixed_by, row[x] == x))
    return inv


def _cycle_type(p: Permutation) -> tuple:
    seen = [False] * p.degree
    lengths = []
    for i in range(p.degree):
        if not seen[i]:
            n, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = p(j)
                n += 1
            lengths.append(n)
    return tuple(sorted(lengths))


def is_isomorphic(S1: Solution, S2: Solution) -> tuple:
    """Return ``(True, phi)`` with ``phi[x]`` the image of ``x``, or ``(False, None)``.

    Backtracking over bijections, restricted to points with equal row
    invariants and propagating the images forced by ``phi(lam_x(y)) = lam_{phi x}(phi y)``.
    """
    if S1.size != S2.size:
        raise SizeMismatch(f"sizes {S1.size} and {S2.size}")
    m = S1.size
    inv1, inv2 = _row_invariants(S1), _row_invariants(S2)
    if sorted(inv1) != sorted(inv2):
        return False, None
    candidates = [[y for y in range(m) if inv2[y] == inv1[x]] for x in range(m)]
    L1, L2 = S1.lam, S2.lam

    def propagate(phi: list, used: list, assigned: list) -> bool:
        # close the partial map under lam; returns False on conflict
        i = 0
        while i < len(assigned):
            a = assigned[i]
            for b in assigned[: i + 1]:
                for x, y in ((a, b), (b, a)):
                    z, w = L1[x][y], L2[phi[x]][phi[y]]
                    if phi[z] == -1:
                        if used[w] or inv1[z] != inv2[w]:
                            return False
                        phi[z], used[w] = w, True
                        assigned.append(z)
                    elif phi[z] != w:
                        return False
            i += 1
        return True

    def search(phi: list, used: list, assigned: list):
        if len(assigned) == m:
            return phi
        x = phi.index(-1)
        for y in candidates[x]:
            if used[y]:
                continue
            phi2, used2, assigned2 = phi[:], used[:], assigned[:]
            phi2[x], used2[y] = y, True
            assigned2.append(x)
            if propagate(phi2, used2, assigned2):
                found = search(phi2, used2, assigned2)
                if found is not None:
                    return found
        return None

    phi = search([-1] * m, [False] * m, [])
    if phi is None:
        return False, None
    return True, list(phi)


def is_isomorphic_bruteforce(S1: Solution, S2: Solution) -> tuple:
    """Exhaustive search over all bijections; an oracle for small sizes."""
    if S1.size != S2.size:
        raise SizeMismatch(f"sizes {S1.size} and {S2.size}")
    m = S1.size
    for phi in itertools.permutations(range(m)):
        if all(phi[S1.lam[x][y]] == S2.lam[phi[x]][phi[y]] for x in range(m) for y in range(m)):
            return True, list(phi)
    return False, None


def canonical_form(S: Solution) -> tuple:
    """Lexicographically least relabelled ``lam`` table, flattened row-major."""
    m = S.size
    best = None
    for phi in itertools.permutations(range(m)):
        table = [0] * (m * m)
        for x in range(m):
            row = S.lam[x]
            base = phi[x] * m
            for y in range(m):
                table[base + phi[y]] = phi[row[y]]
        t = tuple(table)
        if best is None or t < best:
            best = t
    return best


def subsolution(S: Solution, subset: Sequence[int]) -> Solution:
    """Restriction of ``S`` to an invariant subset, relabelled in sorted order."""
    members = sorted(set(subset))
    if not members or members[0] < 0 or members[-1] >= S.size:
        raise MalformedInput("subset must be a non-empty set of valid indices")
    index = {x: i for i, x in enumerate(members)}
    L = [[0] * len(members) for _ in members]
    R = [[0] * len(members) for _ in members]
    for x in members:
        for y in members:
            a, b = S(x, y)
            if a not in index or b not in index:
                raise NotInvariant(f"r({x},{y}) = ({a},{b}) leaves the subset", {"pair": [x, y]})
            L[index[x]][index[y]] = index[a]
            R[index[x]][index[y]] = index[b]
    return validate_solution(L, R)


def solution_to_json(S: Solution, include_rho: bool = False) -> dict:
    out = {"size": S.size, "lambda": [list(r) for r in S.lam]}
    if include_rho:
        out["rho"] = [list(r) for r in S.rho]
    return out


def solution_from_json(data: dict) -> Solution:
    try:
        size, lam = data["size"], data["lambda"]
    except (KeyError, TypeError) as exc:
        raise MalformedInput("solution JSON needs 'size' and 'lambda'") from exc
    if len(lam) != size:
        raise MalformedInput(f"'size' is {size} but 'lambda' has {len(lam)} rows")
    return validate_solution(lam, data.get("rho"))
