"""Finite rings, group rings and the adjoint operation ``a o b = a + b + ab``.

A ``FiniteRing`` lives on ``(Z/k)^dim`` with a bilinear product given by
structure constants ``mul[i][j]`` (the coordinates of ``e_i e_j``).
Elements are indexed in lexicographic vector order, like vector braces.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .brace import VectorBrace, is_two_sided
from .config import DEFAULT_LIMITS, Limits
from .errors import CapExceeded, InternalInconsistency, MalformedInput, NotRadical, NotTwoSided
from .permgrp import PermGroup, Permutation


class FiniteRing:
    def __init__(self, k: int, dim: int, mul, unital: bool = False, one: Sequence[int] | None = None):
        if k < 2:
            raise MalformedInput("k must be at least 2")
        T = np.asarray(mul, dtype=np.int64).reshape(dim, dim, dim) % k if dim else np.zeros((0, 0, 0), np.int64)
        self.k = k
        self.dim = dim
        self.mul_tensor = T
        self.unital = unital
        self.one = tuple(one) if one is not None else None
        self.order = k**dim
        self._weights = np.array([k ** (dim - 1 - i) for i in range(dim)], dtype=np.int64)
        self.vectors = (
            np.indices((k,) * dim).reshape(dim, -1).T.astype(np.int64) if dim else np.zeros((1, 0), np.int64)
        )

    @property
    def zero(self) -> tuple:
        return (0,) * self.dim

    def index(self, v: Sequence[int]) -> int:
        i = 0
        for c in v:
            i = i * self.k + (c % self.k)
        return i

    def vector(self, i: int) -> tuple:
        return tuple(int(c) for c in self.vectors[i])

    def add(self, a: Sequence[int], b: Sequence[int]) -> tuple:
        return tuple((x + y) % self.k for x, y in zip(a, b))

    def neg(self, a: Sequence[int]) -> tuple:
        return tuple((-x) % self.k for x in a)

    def mul(self, a: Sequence[int], b: Sequence[int]) -> tuple:
        out = np.einsum("i,j,ijl->l", np.asarray(a, np.int64), np.asarray(b, np.int64), self.mul_tensor)
        return tuple(int(c) for c in out % self.k)

    def left_matrix(self, a: Sequence[int]) -> np.ndarray:
        """Matrix of ``b -> a b`` acting on coordinate columns."""
        return np.einsum("i,ijl->lj", np.asarray(a, np.int64), self.mul_tensor) % self.k

    def product_table(self) -> np.ndarray:
        """``P[a, b]`` = index of ``a b`` for all element indices."""
        V = self.vectors
        prods = np.einsum("ai,bj,ijl->abl", V, V, self.mul_tensor) % self.k
        return prods @ self._weights

    def add_table(self) -> np.ndarray:
        V = self.vectors
        return ((V[:, None, :] + V[None, :, :]) % self.k) @ self._weights

    def adjoint_table(self) -> np.ndarray:
        A = self.add_table()
        return A[A, self.product_table()]

    def to_json(self) -> dict:
        out = {
            "k": self.k,
            "dim": self.dim,
            "mul": self.mul_tensor.tolist(),
            "unital": self.unital,
        }
        if self.unital and self.one is not None:
            out["one"] = list(self.one)
        return out

    @classmethod
    def from_json(cls, data: dict) -> FiniteRing:
        try:
            return cls(data["k"], data["dim"], data["mul"], bool(data.get("unital", False)), data.get("one"))
        except (KeyError, ValueError, TypeError) as exc:
            raise MalformedInput(f"malformed ring JSON: {exc}") from exc

    def __repr__(self) -> str:
        return f"FiniteRing(k={self.k}, dim={self.dim})"


def adjoint(R: FiniteRing, a: Sequence[int], b: Sequence[int]) -> tuple:
    return R.add(R.add(a, b), R.mul(a, b))


def ring_axiom_witness(R: FiniteRing) -> dict | None:
    """Associativity on basis triples (enough for a bilinear product) and the unit."""
    T = R.mul_tensor
    left = np.einsum("ijm,mlp->ijlp", T, T) % R.k
    right = np.einsum("jlm,imp->ijlp", T, T) % R.k
    bad = np.argwhere(left != right)
    if len(bad):
        i, j, l, _ = (int(c) for c in bad[0])
        return {"condition": "associativity", "basis_triple": [i, j, l]}
    if R.unital:
        if R.one is None:
            return {"condition": "unit missing"}
        for i in range(R.dim):
            e = tuple(int(t == i) for t in range(R.dim))
            if R.mul(R.one, e) != e or R.mul(e, R.one) != e:
                return {"condition": "unit", "basis": i}
    return None


def quasi_inverses(R: FiniteRing) -> list | None:
    """For each element ``a`` some ``b`` with ``a o b = b o a = 0``; ``None`` if one is missing."""
    adj = R.adjoint_table()
    ok = (adj == 0) & (adj.T == 0)
    has = ok.any(axis=1)
    if not has.all():
        return None
    return ok.argmax(axis=1).tolist()


def is_jacobson_radical(R: FiniteRing) -> bool:
    """Every element quasi-regular (brute force over the whole ring)."""
    return quasi_inverses(R) is not None


def zero_ring(k: int, dim: int) -> FiniteRing:
    return FiniteRing(k, dim, np.zeros((dim, dim, dim), dtype=np.int64))


def strictly_upper_triangular(size: int, k: int) -> FiniteRing:
    """Strictly upper triangular ``size x size`` matrices over ``Z/k``.

    Basis ``E_ij`` (``i < j``) in row-major order; ``E_ij E_jl = E_il``.
    """
    basis = [(i, j) for i in range(size) for j in range(i + 1, size)]
    pos = {b: t for t, b in enumerate(basis)}
    d = len(basis)
    T = np.zeros((d, d, d), dtype=np.int64)
    for (i, j), a in pos.items():
        for (j2, l), b in pos.items():
            if j == j2:
                T[a, b, pos[(i, l)]] = 1
    return FiniteRing(k, d, T)


def matrix_of(R: FiniteRing, size: int, v: Sequence[int]) -> np.ndarray:
    """Inverse of the basis bookkeeping in ``strictly_upper_triangular``."""
    M = np.zeros((size, size), dtype=np.int64)
    basis = [(i, j) for i in range(size) for j in range(i + 1, size)]
    for c, (i, j) in zip(v, basis):
        M[i, j] = c
    return M


def brace_from_radical_ring(R: FiniteRing) -> VectorBrace:
    """``(R, +, o)`` as a brace: ``lam_a(b) = b + ab``."""
    if not is_jacobson_radical(R):
        raise NotRadical("some element has no quasi-inverse")
    ident = np.eye(R.dim, dtype=np.int64)
    distinct: dict = {}
    mats = []
    index = []
    for i in range(R.order):
        M = (ident + R.left_matrix(R.vector(i))) % R.k
        key = M.tobytes()
        if key not in distinct:
            distinct[key] = len(mats)
            mats.append(M)
        index.append(distinct[key])
    return VectorBrace(R.k, R.dim, mats, index)


def ring_from_two_sided_brace(B, limits: Limits = DEFAULT_LIMITS) -> FiniteRing:
    """The ring ``(B, +, *)`` of a two-sided brace, verified against the star product."""
    if not isinstance(B, VectorBrace):
        raise MalformedInput("ring reconstruction needs a brace in vector form")
    ok, witness = is_two_sided(B, limits)
    if not ok:
        raise NotTwoSided("the brace is not two-sided", list(witness))
    d = B.dim
    basis = B.additive_generators()
    T = np.zeros((d, d, d), dtype=np.int64)
    for i, ei in enumerate(basis):
        for j, ej in enumerate(basis):
            T[i, j] = B.vector(B.star(ei, ej))
    R = FiniteRing(B.modulus, d, T)
    bad = ring_axiom_witness(R)
    if bad is not None:
        raise InternalInconsistency("star product of a two-sided brace is not associative", bad)
    P = R.product_table()
    if B.order**2 <= 10**6:
        pairs = ((a, b) for a in B.elements for b in B.elements)
    else:
        rng = np.random.default_rng(limits.seed)
        pairs = zip(rng.integers(0, B.order, limits.sample_size), rng.integers(0, B.order, limits.sample_size))
    for a, b in pairs:
        if P[a, b] != B.star(int(a), int(b)):
            raise InternalInconsistency("ring product differs from star", {"pair": [int(a), int(b)]})
    if not is_jacobson_radical(R):
        raise InternalInconsistency("ring of a two-sided brace is not radical")
    return R


# --- group rings -------------------------------------------------------------


@dataclass(frozen=True)
class GroupRingElt:
    """Sparse element: sorted ``(group index, coefficient)`` pairs with nonzero coefficients."""

    coeffs: tuple

    def as_dict(self) -> dict:
        return dict(self.coeffs)


class GroupRing:
    """``Z/k[G]`` for an enumerated permutation group; elements are never materialised in bulk."""

    def __init__(self, k: int, G: PermGroup, cap: int = DEFAULT_LIMITS.cap):
        if k < 2:
            raise MalformedInput("k must be at least 2")
        if G.order > cap:
            raise CapExceeded(f"group order {G.order} exceeds cap {cap}", {"order": G.order})
        self.k = k
        self.group = G
        self.group_elements = G.sorted_elements()
        self.position = {g: i for i, g in enumerate(self.group_elements)}
        self.identity_index = self.position[G.identity()]
        self._mul = [[self.position[g * h] for h in self.group_elements] for g in self.group_elements]

    @property
    def order(self) -> int:
        return self.k ** len(self.group_elements)

    def element(self, coeffs: dict) -> GroupRingElt:
        clean = {int(i): int(c) % self.k for i, c in coeffs.items()}
        return GroupRingElt(tuple(sorted((i, c) for i, c in clean.items() if c)))

    def zero(self) -> GroupRingElt:
        return GroupRingElt(())

    def one(self) -> GroupRingElt:
        return self.element({self.identity_index: 1})

    def basis(self, g: Permutation) -> GroupRingElt:
        return self.element({self.position[g]: 1})

    def add(self, a: GroupRingElt, b: GroupRingElt) -> GroupRingElt:
        out = a.as_dict()
        for i, c in b.coeffs:
            out[i] = out.get(i, 0) + c
        return self.element(out)

    def neg(self, a: GroupRingElt) -> GroupRingElt:
        return self.element({i: -c for i, c in a.coeffs})

    def sub(self, a: GroupRingElt, b: GroupRingElt) -> GroupRingElt:
        return self.add(a, self.neg(b))

    def mul(self, a: GroupRingElt, b: GroupRingElt) -> GroupRingElt:
        out: dict = {}
        for i, c in a.coeffs:
            row = self._mul[i]
            for j, e in b.coeffs:
                t = row[j]
                out[t] = out.get(t, 0) + c * e
        return self.element(out)

    def adjoint(self, a: GroupRingElt, b: GroupRingElt) -> GroupRingElt:
        return self.add(self.add(a, b), self.mul(a, b))

    def elt_to_json(self, a: GroupRingElt) -> dict:
        return {"coeffs": {str(i): c for i, c in a.coeffs}}

    def elt_from_json(self, data: dict) -> GroupRingElt:
        return self.element({int(i): c for i, c in data["coeffs"].items()})


def group_ring(k: int, G: PermGroup, cap: int = DEFAULT_LIMITS.cap) -> GroupRing:
    return GroupRing(k, G, cap)


@dataclass(frozen=True)
class AdjointEmbedding:
    ring: GroupRing
    image: dict  # Permutation -> GroupRingElt
    pairs_checked: int

    @property
    def image_size(self) -> int:
        return len(set(self.image.values()))


def embed_group_adjoint(G: PermGroup, k: int, cap: int = DEFAULT_LIMITS.cap) -> AdjointEmbedding:
    """``f(g) = g - 1`` into the adjoint semigroup of ``Z/k[G]``, checked on all pairs."""
    RG = group_ring(k, G, cap)
    one = RG.one()
    f = {g: RG.sub(RG.basis(g), one) for g in RG.group_elements}
    if len(set(f.values())) != len(f):
        raise InternalInconsistency("g -> g - 1 is not injective")
    checked = 0
    for g in RG.group_elements:
        for h in RG.group_elements:
            if f[g * h] != RG.adjoint(f[g], f[h]):
                raise InternalInconsistency(
                    "f(gh) != f(g) o f(h)", {"g": list(g.images), "h": list(h.images)}
                )
            checked += 1
    return AdjointEmbedding(RG, f, checked)
