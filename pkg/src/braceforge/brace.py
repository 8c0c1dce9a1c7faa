"""Finite left braces.

A brace has elements ``0..N-1``; it exposes its abelian addition and the
maps ``lam(a, .)`` (the additive automorphisms ``L_a``). Multiplication is
always derived: ``a . b = a + lam(a, b)``.

Two representations share one interface:

* ``TableBrace`` -- explicit addition and lambda tables (small orders).
* ``VectorBrace`` -- elements of ``(Z/n)^d`` in lexicographic order, with
  ``lam(a, .)`` a ``d x d`` matrix over ``Z/n``. Only the distinct matrices
  are stored, so orders around ``10^5`` stay cheap.

Algorithms that would be quadratic in the order use the left
distributivity of the star product (``a*(b+c) = a*b + a*c``) to work on
additive generators and on one representative per distinct lambda map.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .config import DEFAULT_LIMITS, Limits
from .errors import AxiomViolation, CapExceeded, MalformedInput, NotAnIdeal, NotInvariant
from .solution import (
    INFINITE,
    RetractQuotient,
    Solution,
    induced_solution,
    is_isomorphic,
    mpl,
    retract,
    validate_solution,
)


class FiniteBrace:
    order: int
    zero: int = 0

    # primitives supplied by subclasses
    def add(self, a: int, b: int) -> int:
        raise NotImplementedError

    def neg(self, a: int) -> int:
        raise NotImplementedError

    def lam(self, a: int, b: int) -> int:
        raise NotImplementedError

    def lam_inv(self, a: int, b: int) -> int:
        raise NotImplementedError

    def lam_key(self, a: int):
        """Hashable value equal for ``a, b`` exactly when ``lam(a, .) == lam(b, .)``."""
        raise NotImplementedError

    def additive_generators(self) -> tuple:
        raise NotImplementedError

    # derived operations
    @property
    def elements(self) -> range:
        return range(self.order)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        return self.add(a, self.lam(a, b))

    def inv(self, a: int) -> int:
        """Multiplicative inverse: ``a . x = 0`` forces ``x = lam_a^{-1}(-a)``."""
        return self.lam_inv(a, self.neg(a))

    def star(self, a: int, b: int) -> int:
        return self.sub(self.lam(a, b), b)

    def lam_classes(self, members: Iterable[int] | None = None) -> dict:
        """One representative (the first met) per distinct lambda map among ``members``."""
        reps: dict = {}
        for a in self.elements if members is None else members:
            reps.setdefault(self.lam_key(a), a)
        return reps

    def is_identity_map(self, a: int) -> bool:
        return all(self.lam(a, g) == g for g in self.additive_generators())

    def multiplicative_generators(self) -> tuple:
        gens = getattr(self, "_mul_gens", None)
        if gens is None:
            found: list = []
            reached = {self.zero}
            for a in self.elements:
                if a not in reached:
                    found.append(a)
                    reached = _mul_subgroup(self, found)
            gens = self._mul_gens = tuple(found)
        return gens

    def lam_table(self) -> np.ndarray:
        N = self.order
        out = np.empty((N, N), dtype=np.int64)
        for a in self.elements:
            out[a] = [self.lam(a, b) for b in self.elements]
        return out

    def add_table(self) -> np.ndarray:
        N = self.order
        out = np.empty((N, N), dtype=np.int64)
        for a in self.elements:
            out[a] = [self.add(a, b) for b in self.elements]
        return out


class TableBrace(FiniteBrace):
    def __init__(self, add, lam, zero: int = 0):
        self._add = np.asarray(add, dtype=np.int64)
        self._lam = np.asarray(lam, dtype=np.int64)
        N = self._add.shape[0]
        if self._add.shape != (N, N) or self._lam.shape != (N, N) or N < 1:
            raise MalformedInput("addition and lambda tables must be square of equal size")
        if min(self._add.min(), self._lam.min()) < 0 or max(self._add.max(), self._lam.max()) >= N:
            raise MalformedInput("table entries out of range")
        if not 0 <= zero < N:
            raise MalformedInput("zero index out of range")
        self.order = N
        self.zero = zero
        self._neg = np.full(N, -1, dtype=np.int64)
        rows, cols = np.nonzero(self._add == zero)
        self._neg[rows] = cols
        self._lam_inv = np.full((N, N), -1, dtype=np.int64)
        for a in range(N):
            self._lam_inv[a, self._lam[a]] = np.arange(N)
        self._add_l = self._add.tolist()
        self._lam_l = self._lam.tolist()
        self._neg_l = self._neg.tolist()
        self._lam_inv_l = self._lam_inv.tolist()
        self._add_gens = None

    def add(self, a, b):
        return self._add_l[a][b]

    def neg(self, a):
        return self._neg_l[a]

    def lam(self, a, b):
        return self._lam_l[a][b]

    def lam_inv(self, a, b):
        return self._lam_inv_l[a][b]

    def lam_key(self, a):
        return tuple(self._lam_l[a])

    def additive_generators(self):
        if self._add_gens is None:
            self._add_gens = _greedy_generators(
                self.elements, self.zero, lambda S, g: _extend_span(self, S, g)
            )
        return self._add_gens

    def lam_table(self):
        return self._lam.copy()

    def add_table(self):
        return self._add.copy()

    def __repr__(self) -> str:
        return f"TableBrace(order={self.order})"


class VectorBrace(FiniteBrace):
    """Brace on ``(Z/modulus)^dim``; ``lam(a, .)`` is ``matrices[matrix_index[a]]``."""

    def __init__(
        self,
        modulus: int,
        dim: int,
        matrices: Sequence,
        matrix_index: Sequence[int],
        mul_generators: Sequence[int] | None = None,
    ):
        if modulus < 2 and dim > 0:
            raise MalformedInput("modulus must be at least 2")
        self.modulus = modulus
        self.dim = dim
        self.order = modulus**dim
        if len(matrix_index) != self.order:
            raise MalformedInput(f"need one lambda entry per element ({self.order})")
        mats = np.asarray(matrices, dtype=np.int64).reshape(len(matrices), dim, dim) % modulus
        self.matrices = mats
        self.matrix_index = np.asarray(matrix_index, dtype=np.int64)
        if self.matrix_index.min() < 0 or self.matrix_index.max() >= len(mats):
            raise MalformedInput("matrix index out of range")
        self.zero = 0
        self._weights = np.array([modulus ** (dim - 1 - i) for i in range(dim)], dtype=np.int64)
        grid = np.indices((modulus,) * dim).reshape(dim, -1).T if dim else np.zeros((1, 0), np.int64)
        self.vectors = grid.astype(np.int64)
        self._vec_l = [tuple(v) for v in self.vectors.tolist()]
        self._mats_l = [m.tolist() for m in mats]
        self._mi_l = self.matrix_index.tolist()
        self._image_cache: dict = {}
        if mul_generators is not None:
            self._mul_gens = tuple(mul_generators)

    def index(self, v: Sequence[int]) -> int:
        n = self.modulus
        i = 0
        for c in v:
            i = i * n + (c % n)
        return i

    def vector(self, a: int) -> tuple:
        return self._vec_l[a]

    def add(self, a, b):
        n = self.modulus
        return self.index([(x + y) % n for x, y in zip(self._vec_l[a], self._vec_l[b])])

    def neg(self, a):
        return self.index([-x for x in self._vec_l[a]])

    def _images(self, k: int) -> tuple:
        """Cached ``(images, inverse images)`` of matrix ``k`` over all elements."""
        cached = self._image_cache.get(k)
        if cached is None:
            img = self.images_of_all(self.matrices[k])
            inv = np.empty_like(img)
            inv[img] = np.arange(self.order)
            cached = self._image_cache[k] = (img.tolist(), inv.tolist())
        return cached

    def lam(self, a, b):
        return self._images(self._mi_l[a])[0][b]

    def lam_inv(self, a, b):
        return self._images(self._mi_l[a])[1][b]

    def lam_key(self, a):
        return self._mi_l[a]

    def lam_matrix(self, a) -> np.ndarray:
        return self.matrices[self._mi_l[a]]

    def additive_generators(self):
        return tuple(self.index([int(i == j) for i in range(self.dim)]) for j in range(self.dim))

    def images_of_all(self, M: np.ndarray) -> np.ndarray:
        """Indices of ``M v`` for every element ``v``, vectorised."""
        return (((self.vectors @ M.T) % self.modulus) @ self._weights).astype(np.int64)

    def lam_table(self):
        out = np.empty((self.order, self.order), dtype=np.int64)
        per_matrix = [self.images_of_all(M) for M in self.matrices]
        for a in self.elements:
            out[a] = per_matrix[self._mi_l[a]]
        return out

    def add_table(self):
        V = self.vectors
        summed = (V[:, None, :] + V[None, :, :]) % self.modulus
        return summed @ self._weights

    def __repr__(self) -> str:
        return f"VectorBrace(modulus={self.modulus}, dim={self.dim}, lambda_maps={len(self.matrices)})"


def _greedy_generators(elements: Iterable[int], zero: int, extend) -> tuple:
    span = {zero}
    gens = []
    for a in elements:
        if a not in span:
            gens.append(a)
            span = extend(span, a)
    return tuple(gens)


def _extend_span(B: FiniteBrace, span: set, g: int) -> set:
    """Additive span of ``span`` (already a subgroup) and ``g``: the union of ``span + k g``."""
    result = set(span)
    shift = g
    while shift not in span:
        result.update(B.add(s, shift) for s in span)
        shift = B.add(shift, g)
    return result


def _mul_subgroup(B: FiniteBrace, gens: Sequence[int]) -> set:
    """Multiplicative subgroup generated by ``gens`` (finite, so right multiples suffice)."""
    out = {B.zero}
    queue = deque(out)
    while queue:
        x = queue.popleft()
        for g in gens:
            y = B.mul(x, g)
            if y not in out:
                out.add(y)
                queue.append(y)
    return out


@dataclass(frozen=True)
class BraceSubset:
    members: frozenset
    generators: tuple = field(compare=False)

    @property
    def order(self) -> int:
        return len(self.members)

    def is_zero(self) -> bool:
        return len(self.members) == 1

    def __contains__(self, a: int) -> bool:
        return a in self.members

    def sorted(self) -> list:
        return sorted(self.members)


def span(B: FiniteBrace, elements: Iterable[int]) -> BraceSubset:
    """Additive subgroup generated by ``elements``, with a reduced generating set."""
    current = {B.zero}
    gens = []
    for a in elements:
        if a not in current:
            gens.append(a)
            current = _extend_span(B, current, a)
    return BraceSubset(frozenset(current), tuple(gens))


def whole(B: FiniteBrace) -> BraceSubset:
    return BraceSubset(frozenset(B.elements), tuple(B.additive_generators()))


def zero_subset(B: FiniteBrace) -> BraceSubset:
    return BraceSubset(frozenset([B.zero]), ())


def subset(B: FiniteBrace, members: Iterable[int]) -> BraceSubset:
    members = frozenset(members)
    gens = span(B, sorted(members)).generators
    return BraceSubset(members, gens)


def star_span(B: FiniteBrace, S: BraceSubset, T: BraceSubset) -> BraceSubset:
    """Additive subgroup generated by ``{s * t : s in S, t in T}``.

    ``s * t`` depends on ``s`` only through ``lam(s, .)`` and is additive in
    ``t``, so one ``s`` per lambda map and the generators of ``T`` suffice
    when ``T`` is an additive subgroup.
    """
    reps = B.lam_classes(S.members).values()
    t_gens = T.generators if T.generators or T.is_zero() else tuple(T.members)
    return span(B, (B.star(s, t) for s in reps for t in t_gens))


def socle(B: FiniteBrace) -> BraceSubset:
    members = [a for a in B.elements if B.is_identity_map(a)]
    S = span(B, members)
    if S.members != frozenset(members):
        raise AxiomViolation("socle is not an additive subgroup", {"members": members})
    return S


def _normal_witness(B: FiniteBrace, S: BraceSubset) -> tuple | None:
    for g in B.multiplicative_generators():
        gi = B.inv(g)
        for s in S.members:
            if B.mul(B.mul(g, s), gi) not in S.members:
                return g, s
    return None


def ideal_witness(B: FiniteBrace, S: BraceSubset) -> dict | None:
    """``None`` if ``S`` is an ideal, else a dict naming the failed condition."""
    members = S.members
    if B.zero not in members:
        return {"condition": "contains zero"}
    closure = span(B, sorted(members))
    if closure.members != members:
        extra = min(closure.members - members)
        return {"condition": "additive subgroup", "element": extra}
    for a in B.lam_classes().values():
        for s in closure.generators:
            if B.lam(a, s) not in members:
                return {"condition": "lambda invariant", "pair": [a, s]}
    if len(members) ** 2 <= 10**6:
        for s in members:
            for t in members:
                if B.mul(s, t) not in members:
                    return {"condition": "multiplicative subgroup", "pair": [s, t]}
    bad = _normal_witness(B, S)
    if bad is not None:
        return {"condition": "normal subgroup", "pair": list(bad)}
    return None


def is_ideal(B: FiniteBrace, S: BraceSubset) -> bool:
    return ideal_witness(B, S) is None


def quotient(B: FiniteBrace, ideal: BraceSubset) -> tuple:
    """Coset brace ``B / ideal`` and the projection ``element -> coset index``."""
    bad = ideal_witness(B, ideal)
    if bad is not None:
        raise NotAnIdeal("not an ideal", bad)
    proj = [-1] * B.order
    reps = []
    for a in B.elements:
        if proj[a] == -1:
            for i in ideal.members:
                proj[B.add(a, i)] = len(reps)
            reps.append(a)
    k = len(reps)
    add = [[proj[B.add(x, y)] for y in reps] for x in reps]
    lam = [[proj[B.lam(x, y)] for y in reps] for x in reps]
    return TableBrace(add, lam, proj[B.zero]), tuple(proj)


def _series(B: FiniteBrace, step) -> tuple:
    chain = [whole(B)]
    while not chain[-1].is_zero():
        nxt = step(chain[-1])
        if nxt.members == chain[-1].members:
            return chain, False
        chain.append(nxt)
    return chain, True


def right_series(B: FiniteBrace) -> tuple:
    """``B^(1) = B``, ``B^(k+1) = B^(k) * B``; returns ``(chain, right_nilpotent)``.

    The chain stops at the zero subset or at the first repeated term.
    """
    full = whole(B)
    return _series(B, lambda cur: star_span(B, cur, full))


def left_series(B: FiniteBrace) -> tuple:
    """``B^1 = B``, ``B^(k+1) = B * B^k``; returns ``(chain, left_nilpotent)``."""
    full = whole(B)
    return _series(B, lambda cur: star_span(B, full, cur))


def _right_action(B: FiniteBrace, x: int, y: int) -> int:
    return B.lam_inv(B.lam(x, y), x)


def associated_solution(B: FiniteBrace, limits: Limits = DEFAULT_LIMITS) -> Solution:
    """``r(a, b) = (L_a(b), L^{-1}_{L_a(b)}(a))`` as an explicit table solution."""
    if B.order > limits.table_limit:
        raise CapExceeded(
            f"order {B.order} exceeds table_limit {limits.table_limit}", {"order": B.order}
        )
    L = B.lam_table()
    inv = np.empty_like(L)
    rows = np.arange(B.order)[:, None]
    inv[rows, L] = np.arange(B.order)[None, :]
    xs = np.broadcast_to(np.arange(B.order)[:, None], L.shape)
    R = inv[L, xs]
    return validate_solution(L, R)


def associated_subsolution(B: FiniteBrace, points: Sequence[int]) -> Solution:
    """Restriction of the associated solution to ``points`` (relabelled in the given order)."""
    index = {p: i for i, p in enumerate(points)}
    if len(index) != len(points):
        raise MalformedInput("points must be distinct")
    k = len(points)
    L = [[0] * k for _ in range(k)]
    R = [[0] * k for _ in range(k)]
    for x in points:
        for y in points:
            a, b = B.lam(x, y), _right_action(B, x, y)
            if a not in index or b not in index:
                raise NotInvariant(f"r({x},{y}) leaves the point set", {"pair": [x, y]})
            L[index[x]][index[y]] = index[a]
            R[index[x]][index[y]] = index[b]
    return validate_solution(L, R)


def associated_retraction(B: FiniteBrace, limits: Limits = DEFAULT_LIMITS) -> RetractQuotient:
    """Retraction of the associated solution computed without its full table.

    Points are grouped by their lambda map. Well-definedness on classes is
    checked on every pair when the order is at most ``limits.table_limit``,
    and on class representatives plus a seeded random sample otherwise.
    """
    labels: dict = {}
    class_of = tuple(labels.setdefault(B.lam_key(a), len(labels)) for a in B.elements)
    if B.order <= limits.table_limit:
        points = list(B.elements)
    else:
        reps = list(B.lam_classes().values())
        rng = random.Random(limits.seed)
        extra = rng.sample(range(B.order), min(B.order, max(0, int(limits.sample_size**0.5))))
        points = reps + [p for p in extra if p not in set(reps)]
    retracted = induced_solution(
        class_of, points, B.lam, lambda x, y: _right_action(B, x, y)
    )
    return RetractQuotient(B.order, class_of, retracted)


def associated_mpl(B: FiniteBrace, limits: Limits = DEFAULT_LIMITS):
    """Multipermutation level of the associated solution."""
    if B.order <= limits.table_limit:
        return mpl(associated_solution(B, limits))
    if B.order == 1:
        return 0
    retr = associated_retraction(B, limits).retracted
    if retr.size == B.order:
        return INFINITE
    rest = mpl(retr)
    return INFINITE if rest is INFINITE else rest + 1


def _right_index(chain: list, nilpotent: bool):
    """``m`` with ``B^(m+1) = 0`` and ``B^(m) != 0``, or ``None``."""
    return len(chain) - 1 if nilpotent else None


def check_proposition_five(B: FiniteBrace, limits: Limits = DEFAULT_LIMITS) -> dict:
    """Compare the level of the associated solution with the right nilpotency index."""
    if B.order < 2:
        raise MalformedInput("the brace must be nonzero")
    level = associated_mpl(B, limits)
    chain, nilpotent = right_series(B)
    index = _right_index(chain, nilpotent)
    if level is INFINITE:
        holds = index is None
    else:
        holds = index is not None and level == index
    return {
        "mpl": "infinite" if level is INFINITE else level,
        "right_index": index,
        "right_series_orders": [c.order for c in chain],
        "holds": holds,
    }


def retract_iso_check(B: FiniteBrace, limits: Limits = DEFAULT_LIMITS) -> bool:
    """``Ret`` of the associated solution is isomorphic to the solution of ``B/soc(B)``."""
    if B.order <= limits.table_limit:
        left = retract(associated_solution(B, limits)).retracted
    else:
        left = associated_retraction(B, limits).retracted
    Q, _ = quotient(B, socle(B))
    right = associated_solution(Q, limits)
    if left.size != right.size:
        return False
    return is_isomorphic(left, right)[0]


def socle_commutator_witness(B: FiniteBrace) -> tuple | None:
    """First ``(a, c)`` with ``c`` in the socle and ``[c, a] != a^{-1} * c``."""
    soc = socle(B)
    for a in B.elements:
        ai = B.inv(a)
        for c in soc.sorted():
            comm = B.mul(B.mul(B.inv(c), ai), B.mul(c, a))
            if comm != B.star(ai, c):
                return a, c
    return None


def check_socle_commutator(B: FiniteBrace) -> bool:
    return socle_commutator_witness(B) is None


def two_sided_witness(B: FiniteBrace, limits: Limits = DEFAULT_LIMITS) -> tuple | None:
    """First triple violating ``(a + b) c + c = a c + b c``, or ``None``.

    Exhaustive up to ``limits.exhaustive_limit``. Above it the law is
    reduced to ``lam(a+g, c) + c = lam(a, c) + lam(g, c)`` for all ``a`` and
    additive generators ``g, c``; both sides are additive in ``c``, and the
    identity for generators ``g`` propagates to all ``b`` by induction.
    """
    if B.order <= limits.exhaustive_limit:
        A, L = B.add_table(), B.lam_table()
        M = A[np.arange(B.order)[:, None], L]  # M[a, b] = a . b
        idx = np.arange(B.order)
        a, b, c = idx[:, None, None], idx[None, :, None], idx[None, None, :]
        lhs = A[M[A[a, b], c], c]
        rhs = A[M[a, c], M[b, c]]
        bad = lhs != rhs
        if bad.any():
            return tuple(int(i) for i in np.argwhere(bad)[0])
        return None
    gens = B.additive_generators()
    for a in B.elements:
        for g in gens:
            ag = B.add(a, g)
            for c in gens:
                if B.add(B.lam(ag, c), c) != B.add(B.lam(a, c), B.lam(g, c)):
                    return a, g, c
    return None


def is_two_sided(B: FiniteBrace, limits: Limits = DEFAULT_LIMITS) -> tuple:
    w = two_sided_witness(B, limits)
    return w is None, w


def trivial_brace(factors: Sequence[int]) -> FiniteBrace:
    """Trivial brace (``a . b = a + b``) on the product of cyclic groups ``Z/f``."""
    factors = list(factors)
    if any(f < 1 for f in factors):
        raise MalformedInput("cyclic factors must be positive")
    factors = [f for f in factors if f > 1]
    if factors and len(set(factors)) == 1:
        n, d = factors[0], len(factors)
        return VectorBrace(n, d, [np.eye(d, dtype=np.int64)], [0] * n**d)
    elems = list(itertools.product(*[range(f) for f in factors]))
    index = {e: i for i, e in enumerate(elems)}
    add = [[index[tuple((x + y) % f for x, y, f in zip(u, v, factors))] for v in elems] for u in elems]
    lam = [list(range(len(elems))) for _ in elems]
    return TableBrace(add, lam, index[tuple(0 for _ in factors)])


def to_table(B: FiniteBrace) -> TableBrace:
    if isinstance(B, TableBrace):
        return B
    return TableBrace(B.add_table(), B.lam_table(), B.zero)


# --- validation ---------------------------------------------------------------


def _table_violation(add: np.ndarray, lam: np.ndarray, zero: int, triples) -> tuple | None:
    """Check every axiom on the given index arrays ``(a, b, c)`` (broadcastable)."""
    N = add.shape[0]
    idx = np.arange(N)
    ids = idx
    # additive group: zero neutral, inverses, commutative, associative
    if not (np.array_equal(add[zero], idx) and np.array_equal(add[:, zero], idx)):
        return "additive neutral", {"zero": zero}
    for a in range(N):
        if not np.array_equal(np.sort(add[a]), ids):
            return "additive inverses", {"a": a}
        if not np.array_equal(np.sort(lam[a]), ids):
            return "lambda bijective", {"a": a}
    if not np.array_equal(add, add.T):
        a, b = np.argwhere(add != add.T)[0]
        return "additive commutativity", {"pair": [int(a), int(b)]}
    mul = add[idx[:, None], lam]
    if not np.array_equal(lam[zero], idx):
        return "multiplicative neutral", {"zero": zero}
    for a in range(N):
        if not np.array_equal(np.sort(mul[a]), ids):
            return "multiplicative inverses", {"a": a}
    a, b, c = triples

    def first(mask):
        w = np.argwhere(mask)[0]
        return [int(np.broadcast_to(t, mask.shape)[tuple(w)]) for t in (a, b, c)]

    checks = [
        ("additive associativity", add[add[a, b], c] != add[a, add[b, c]]),
        ("lambda additive", lam[a, add[b, c]] != add[lam[a, b], lam[a, c]]),
        ("multiplicative associativity", mul[mul[a, b], c] != mul[a, mul[b, c]]),
        ("left brace identity", add[mul[a, add[b, c]], a] != add[mul[a, b], mul[a, c]]),
        ("lambda homomorphism", lam[mul[a, b], c] != lam[a, lam[b, c]]),
    ]
    for which, mask in checks:
        if mask.any():
            return which, {"triple": first(mask)}
    return None


def _structural_violation(B: VectorBrace) -> tuple | None:
    """Exact check for vector braces through generators.

    Each ``lam`` is linear, so additivity and the brace identity hold by
    construction. What remains: every matrix is invertible, ``lam`` of zero
    is the identity, ``lam(a . g) = lam(a) lam(g)`` for all ``a`` and the
    multiplicative generators ``g``, and those generators reach every
    element. Then ``(B, .)`` embeds in the affine group and is a group.
    """
    n = B.modulus
    ident = np.eye(B.dim, dtype=np.int64)
    for k, M in enumerate(B.matrices):
        images = B.images_of_all(M)
        if len(np.unique(images)) != B.order:
            return "lambda bijective", {"matrix": k}
    if not np.array_equal(B.lam_matrix(B.zero) % n, ident % n):
        return "multiplicative neutral", {"zero": B.zero}
    gens = B.multiplicative_generators()
    for a in B.elements:
        Ma = B.lam_matrix(a)
        for g in gens:
            if not np.array_equal(B.lam_matrix(B.mul(a, g)), (Ma @ B.lam_matrix(g)) % n):
                return "lambda homomorphism", {"pair": [a, g]}
    reached = {B.zero}
    queue = deque([B.zero])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = B.mul(x, g)
            if y not in reached:
                reached.add(y)
                queue.append(y)
    if len(reached) != B.order:
        return "multiplicative generation", {"reached": len(reached)}
    return None


def validate_brace(B: FiniteBrace, limits: Limits = DEFAULT_LIMITS) -> dict:
    """Check the brace axioms; raise ``AxiomViolation`` with the first witness.

    Orders up to ``limits.exhaustive_limit`` are checked on all triples.
    Larger vector braces get the exact generator-based check; larger table
    braces get a seeded random sample of triples.
    """
    N = B.order
    if N <= limits.exhaustive_limit:
        add, lam = B.add_table(), B.lam_table()
        idx = np.arange(N)
        bad = None
        chunk = max(1, min(N, 2_000_000 // (N * N)))
        for start in range(0, N, chunk):
            a = idx[start : start + chunk][:, None, None]
            bad = _table_violation(add, lam, B.zero, (a, idx[None, :, None], idx[None, None, :]))
            if bad is not None:
                break
        method = "exhaustive"
    elif isinstance(B, VectorBrace):
        bad = _structural_violation(B)
        method = "structural"
    else:
        add, lam = B.add_table(), B.lam_table()
        rng = np.random.default_rng(limits.seed)
        a, b, c = (rng.integers(0, N, limits.sample_size) for _ in range(3))
        bad = _table_violation(add, lam, B.zero, (a, b, c))
        method = "sampled"
    if bad is not None:
        raise AxiomViolation(*bad)
    return {"valid": True, "order": N, "method": method}


# --- JSON -------------------------------------------------------------------


def brace_to_json(B: FiniteBrace) -> dict:
    if isinstance(B, VectorBrace):
        flat = [m.reshape(-1).tolist() for m in B.matrices]
        out = {
            "repr": "vector",
            "modulus": B.modulus,
            "dim": B.dim,
            "lambda": [flat[k] for k in B.matrix_index.tolist()],
        }
        gens = getattr(B, "_mul_gens", None)
        if gens is not None:
            out["mul_generators"] = list(gens)
        return out
    return {
        "repr": "table",
        "order": B.order,
        "add": B.add_table().tolist(),
        "lambda": B.lam_table().tolist(),
        "zero": B.zero,
    }


def brace_from_json(data: dict) -> FiniteBrace:
    try:
        kind = data["repr"]
        if kind == "table":
            if len(data["add"]) != data["order"]:
                raise MalformedInput("'order' does not match the table size")
            return TableBrace(data["add"], data["lambda"], data["zero"])
        if kind == "vector":
            d = data["dim"]
            distinct: dict = {}
            index = [distinct.setdefault(tuple(row), len(distinct)) for row in data["lambda"]]
            if any(len(row) != d * d for row in distinct):
                raise MalformedInput("each lambda entry must be a flattened dim x dim matrix")
            mats = [list(row) for row in distinct] or [np.eye(d, dtype=np.int64).reshape(-1)]
            return VectorBrace(data["modulus"], d, mats, index, data.get("mul_generators"))
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"malformed brace JSON: {exc}") from exc
    raise MalformedInput(f"unknown brace repr {data.get('repr')!r}")
