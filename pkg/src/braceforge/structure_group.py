"""The structure group G(X, r) in semidirect form, and its finite brace quotients.

An element is a pair ``(vec, perm)``: ``vec`` is its coordinate vector in the
free abelian group with basis X (the additive structure of the canonical
brace) and ``perm`` is the permutation ``L_g`` restricted to X. The product is
``(v, p)(w, s) = (v + p.w, p s)`` where ``p.w`` moves coordinate ``i`` to ``p(i)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import comb
from typing import Sequence

import numpy as np

from .brace import VectorBrace, associated_subsolution
from .config import DEFAULT_LIMITS
from .errors import CapExceeded, DegreeMismatch, IndexOutOfRange, InternalInconsistency
from .permgrp import Permutation, closure
from .solution import Solution, permutation_generators


@dataclass(frozen=True)
class GElement:
    vec: tuple
    perm: Permutation

    @property
    def degree(self) -> int:
        return len(self.vec)

    def _check(self, other: GElement) -> None:
        if self.degree != other.degree:
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree}")

    def __mul__(self, other: GElement) -> GElement:
        self._check(other)
        moved = self.perm.act_on_vector(other.vec)
        return GElement(tuple(a + b for a, b in zip(self.vec, moved)), self.perm * other.perm)

    def inverse(self) -> GElement:
        pinv = self.perm.inverse()
        return GElement(tuple(-c for c in pinv.act_on_vector(self.vec)), pinv)

    def __pow__(self, k: int) -> GElement:
        base = self if k >= 0 else self.inverse()
        out = identity(self.degree)
        for _ in range(abs(k)):
            out = out * base
        return out

    def add(self, other: GElement) -> tuple:
        """Sum in the additive group; only the vector is defined here."""
        self._check(other)
        return tuple(a + b for a, b in zip(self.vec, other.vec))

    def negate(self) -> tuple:
        return tuple(-c for c in self.vec)


def identity(m: int) -> GElement:
    return GElement((0,) * m, Permutation.identity(m))


def generator(S: Solution, x: int) -> GElement:
    if not 0 <= x < S.size:
        raise IndexOutOfRange(f"{x} is not a point of a solution of size {S.size}")
    return GElement(tuple(int(i == x) for i in range(S.size)), Permutation(S.lam[x]))


def from_word(S: Solution, word: Sequence[tuple]) -> GElement:
    """Product of ``generator(S, x) ** e`` over the ``(x, e)`` pairs of ``word``."""
    g = identity(S.size)
    for x, e in word:
        g = g * generator(S, x) ** e
    return g


def star_vector(a: GElement, b_vec: Sequence[int]) -> tuple:
    """``a * b = L_a(b) - b``, which is linear in ``b``."""
    if len(b_vec) != a.degree:
        raise DegreeMismatch(f"degrees {a.degree} and {len(b_vec)}")
    moved = a.perm.act_on_vector(b_vec)
    return tuple(u - v for u, v in zip(moved, b_vec))


def e_sequence(a: GElement, b: GElement, k_max: int) -> list:
    """``[e_1, ..., e_k_max]`` with ``e_1 = a * b`` and ``e_{k+1} = a * e_k``."""
    out = []
    cur = tuple(b.vec)
    for _ in range(k_max):
        cur = star_vector(a, cur)
        out.append(cur)
    return out


def _lin(terms) -> tuple:
    """Integer linear combination of equal-length vectors."""
    terms = list(terms)
    m = len(terms[0][1])
    return tuple(sum(c * v[i] for c, v in terms) for i in range(m))


def check_binomial_identity(a: GElement, b: GElement, m: int) -> bool:
    """``L_{a^m}(b) = b + sum_{i=1..m} C(m, i) e_i(a, b)``."""
    lhs = (a**m).perm.act_on_vector(b.vec)
    e = e_sequence(a, b, m)
    rhs = _lin([(1, b.vec)] + [(comb(m, i), e[i - 1]) for i in range(1, m + 1)])
    return lhs == rhs


def check_eq2_recursion(a: GElement, b: GElement, k_max: int) -> bool:
    """``n e_k = -sum_{i=2..n} C(n, i) e_{i+k-1}`` for ``k <= k_max``, ``n`` the order of ``L_a``."""
    n = a.perm.order()
    e = e_sequence(a, b, k_max + n)
    zero = (0,) * a.degree
    for k in range(1, k_max + 1):
        lhs = tuple(n * c for c in e[k - 1])
        terms = [(-comb(n, i), e[i + k - 2]) for i in range(2, n + 1)]
        rhs = _lin(terms) if terms else zero
        if lhs != rhs:
            return False
    return True


def lemma_nil_criterion(a: GElement, b: GElement, bound: int | None = None) -> tuple:
    """``(vanishes, first_k)``: whether some ``e_k(a, b)`` is zero for ``k <= bound``.

    In a torsion-free brace this happens exactly when ``e_1 = 0``; the
    function raises ``InternalInconsistency`` if the computation disagrees.
    """
    if bound is None:
        bound = a.degree * a.perm.order()
    zero = (0,) * a.degree
    first = None
    for k, ek in enumerate(e_sequence(a, b, bound), start=1):
        if ek == zero:
            first = k
            break
    vanishes = first is not None
    if vanishes != (star_vector(a, b.vec) == zero):
        raise InternalInconsistency(
            "iterated star vanishes without a * b = 0", {"a": list(a.vec), "b": list(b.vec)}
        )
    return vanishes, first


def socle_index(S: Solution, cap: int = DEFAULT_LIMITS.cap) -> int:
    """``[G : soc(G)]``, the order of the permutation group of ``S``."""
    return closure(permutation_generators(S), cap=cap, degree=S.size).order


def theorem_one_witness(S: Solution) -> tuple | None:
    """A pair ``(x, y)`` whose iterated star never vanishes, or ``None``."""
    for x in range(S.size):
        gx = generator(S, x)
        for y in range(S.size):
            if not lemma_nil_criterion(gx, generator(S, y))[0]:
                return x, y
    return None


def check_theorem_one(S: Solution) -> bool:
    """All iterated stars of generators vanish => ``S`` is trivial."""
    return theorem_one_witness(S) is not None or S.is_trivial()


def nonabelian_witness(S: Solution) -> tuple | None:
    for x in range(S.size):
        gx = generator(S, x)
        for y in range(x + 1, S.size):
            gy = generator(S, y)
            if gx * gy != gy * gx:
                return x, y
    return None


def check_nonabelian(S: Solution) -> bool:
    """A non-trivial solution has two non-commuting generators."""
    return S.is_trivial() or nonabelian_witness(S) is not None


@dataclass(frozen=True)
class EmbeddingResult:
    brace: VectorBrace
    modulus: int
    inject: tuple
    solution_image: Solution

    def inject_vectors(self) -> list:
        return [list(self.brace.vector(i)) for i in self.inject]

    def to_json(self) -> dict:
        from .brace import brace_to_json

        out = brace_to_json(self.brace)
        out["modulus"] = self.modulus
        out["inject"] = self.inject_vectors()
        return out


def _perm_matrix(p: Permutation) -> np.ndarray:
    m = p.degree
    M = np.zeros((m, m), dtype=np.int64)
    M[list(p.images), list(range(m))] = 1
    return M


def embed_finite_brace(S: Solution, cap: int = DEFAULT_LIMITS.cap) -> EmbeddingResult:
    """The finite brace ``G(X, r) / n'G(X, r)`` containing ``S`` as a subsolution.

    ``n'`` is the socle index, raised to 2 for the trivial solution so that
    the points stay distinct. The quotient is built by closing the images of
    the generators in ``(Z/n')^m`` semidirect ``Sym(X)``.
    """
    m = S.size
    n = socle_index(S, cap)
    modulus = max(n, 2)
    order = modulus**m
    if order > cap:
        raise CapExceeded(f"embedded brace order {order} exceeds cap {cap}", {"order": order})
    gens = [
        (tuple(int(i == x) for i in range(m)), Permutation(S.lam[x])) for x in range(m)
    ]
    start = ((0,) * m, Permutation.identity(m))
    perm_of = {start[0]: start[1]}
    queue = deque([start])
    while queue:
        v, p = queue.popleft()
        for w, s in gens:
            moved = p.act_on_vector(w)
            u = tuple((a + b) % modulus for a, b in zip(v, moved))
            q = p * s
            known = perm_of.get(u)
            if known is None:
                perm_of[u] = q
                queue.append((u, q))
            elif known != q:
                raise InternalInconsistency(
                    "vector part does not determine the permutation part", {"vector": list(u)}
                )
    if len(perm_of) != order:
        raise InternalInconsistency(
            f"quotient has {len(perm_of)} elements, expected {order}", {"found": len(perm_of)}
        )
    perms: dict = {}
    weights = [modulus ** (m - 1 - i) for i in range(m)]
    matrix_index = [0] * order
    for u, p in perm_of.items():
        matrix_index[sum(c * w for c, w in zip(u, weights))] = perms.setdefault(p, len(perms))
    matrices = [_perm_matrix(p) for p in perms]
    inject = tuple(weights[x] for x in range(m))
    brace = VectorBrace(modulus, m, matrices, matrix_index, mul_generators=inject)
    image = associated_subsolution(brace, inject)
    if image.lam != S.lam:
        raise InternalInconsistency("restricted solution differs from the input")
    return EmbeddingResult(brace, modulus, inject, image)
