"""Permutations and finite permutation groups given by generators.

Composition convention, shared by every module: permutations act on the
left and ``(f * g)(x) == f(g(x))``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .config import DEFAULT_LIMITS
from .errors import CapExceeded, DegreeMismatch, MalformedInput


class Permutation:
    """A bijection of ``{0, ..., n-1}`` stored as its image array."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise MalformedInput(f"not a permutation: {list(images)}", list(images))
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> Permutation:
        images = list(range(n))
        for cycle in cycles:
            for i, x in enumerate(cycle):
                images[x] = cycle[(i + 1) % len(cycle)]
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: Permutation) -> Permutation:
        if self.degree != other.degree:
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree}")
        mine = self.images
        return Permutation(mine[j] for j in other.images)

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def __pow__(self, k: int) -> Permutation:
        base = self if k >= 0 else self.inverse()
        result = Permutation.identity(self.degree)
        k = abs(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def order(self) -> int:
        p, k = self, 1
        while not p.is_identity():
            p = p * self
            k += 1
        return k

    def act_on_vector(self, w: Sequence[int]) -> tuple:
        """Permute coordinates: the result ``u`` has ``u[self(i)] == w[i]``."""
        u = [0] * len(w)
        for i, j in enumerate(self.images):
            u[j] = w[i]
        return tuple(u)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


def commutator(g: Permutation, h: Permutation) -> Permutation:
    """``[g, h] = g^-1 h^-1 g h``."""
    return g.inverse() * h.inverse() * g * h


@dataclass(frozen=True)
class PermGroup:
    degree: int
    generators: tuple
    elements: frozenset

    @property
    def order(self) -> int:
        return len(self.elements)

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def sorted_elements(self) -> list:
        return sorted(self.elements)

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for a in gens for b in gens)

    def to_json(self) -> dict:
        return {"degree": self.degree, "generators": [list(g.images) for g in self.generators]}

    @classmethod
    def from_json(cls, data: dict, cap: int = DEFAULT_LIMITS.cap) -> PermGroup:
        gens = [Permutation(g) for g in data["generators"]]
        return closure(gens, cap=cap, degree=data["degree"])


def closure(
    generators: Sequence[Permutation], cap: int = DEFAULT_LIMITS.cap, degree: int | None = None
) -> PermGroup:
    """Breadth-first product closure of ``generators``.

    Raises ``CapExceeded`` as soon as more than ``cap`` elements are found.
    """
    generators = tuple(generators)
    if degree is None:
        if not generators:
            raise MalformedInput("degree required when there are no generators")
        degree = generators[0].degree
    for g in generators:
        if g.degree != degree:
            raise DegreeMismatch(f"generator {g} has degree {g.degree}, expected {degree}")
    ident = Permutation.identity(degree)
    seen = {ident}
    queue = deque([ident])
    distinct = list(dict.fromkeys(generators))
    while queue:
        p = queue.popleft()
        for g in distinct:
            q = g * p
            if q not in seen:
                seen.add(q)
                if len(seen) > cap:
                    raise CapExceeded(f"closure exceeded cap {cap}", {"partial": len(seen)})
                queue.append(q)
    return PermGroup(degree, generators, frozenset(seen))


def is_engel_pair(g: Permutation, h: Permutation, bound: int | None = None) -> bool:
    """Whether ``[[...[g, h], h]..., h]`` reaches the identity within ``bound`` steps.

    The iterated commutators live in a finite group, so the sequence is
    eventually periodic; a repeated value without the identity settles the
    answer as ``False`` before the bound is used up.
    """
    if bound is None:
        bound = closure([g, h]).order
    c = commutator(g, h)
    seen = set()
    for _ in range(bound):
        if c.is_identity():
            return True
        if c in seen:
            return False
        seen.add(c)
        c = commutator(c, h)
    return False


def engel_witness(G: PermGroup) -> tuple | None:
    """First pair ``(g, h)`` of ``G`` that fails the Engel condition, or ``None``."""
    elems = G.sorted_elements()
    for g in elems:
        for h in elems:
            if not is_engel_pair(g, h, G.order):
                return g, h
    return None


def is_engel_group(G: PermGroup) -> bool:
    return engel_witness(G) is None


def generated_subgroup(elements: Iterable[Permutation], degree: int, cap: int = DEFAULT_LIMITS.cap) -> PermGroup:
    return closure(list(set(elements)), cap=cap, degree=degree)


def lower_central_series(G: PermGroup, cap: int = DEFAULT_LIMITS.cap) -> list:
    """``G = g_1 >= g_2 >= ...`` with ``g_{i+1} = [g_i, G]``, until it stabilises."""
    series = [G]
    elems = list(G.elements)
    while True:
        current = series[-1]
        nxt = generated_subgroup(
            (commutator(a, g) for a in current.elements for g in elems), G.degree, cap
        )
        if nxt.elements == current.elements:
            return series
        series.append(nxt)


def is_nilpotent(G: PermGroup, cap: int = DEFAULT_LIMITS.cap) -> tuple:
    """Return ``(nilpotent, nilpotency_class)``; the class is ``None`` if not nilpotent."""
    series = lower_central_series(G, cap)
    if series[-1].order == 1:
        return True, len(series) - 1
    return False, None


# Small named groups, used as test fixtures and by the CLI.


def cyclic_group(n: int) -> PermGroup:
    return closure([Permutation([(i + 1) % n for i in range(n)])], degree=n)


def symmetric_group(n: int) -> PermGroup:
    gens = [Permutation.identity(n)]
    if n >= 2:
        gens = [Permutation.from_cycles(n, (0, 1)), Permutation.from_cycles(n, tuple(range(n)))]
    return closure(gens, degree=n)


def dihedral_group(n: int) -> PermGroup:
    """Symmetries of an ``n``-gon; order ``2n``."""
    rot = Permutation([(i + 1) % n for i in range(n)])
    ref = Permutation([(-i) % n for i in range(n)])
    return closure([rot, ref], degree=n)


def klein_four_group() -> PermGroup:
    return closure(
        [Permutation.from_cycles(4, (0, 1), (2, 3)), Permutation.from_cycles(4, (0, 2), (1, 3))],
        degree=4,
    )


NAMED_GROUPS = {
    "C2": lambda: cyclic_group(2),
    "C4": lambda: cyclic_group(4),
    "V4": klein_four_group,
    "S3": lambda: symmetric_group(3),
    "D4": lambda: dihedral_group(4),
}
