import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from braceforge.errors import CapExceeded, DegreeMismatch
from braceforge.permgrp import (
    Permutation,
    PermGroup,
    closure,
    commutator,
    cyclic_group,
    dihedral_group,
    engel_witness,
    is_engel_group,
    is_engel_pair,
    is_nilpotent,
    lower_central_series,
    symmetric_group,
)


def perms(n):
    return st.permutations(list(range(n))).map(Permutation)


def test_composition_convention():
    f = Permutation([1, 2, 0])
    g = Permutation([0, 2, 1])
    assert (f * g)(1) == f(g(1)) == 0


@given(perms(5), perms(5), perms(5))
def test_group_laws(f, g, h):
    e = Permutation.identity(5)
    assert (f * g) * h == f * (g * h)
    assert f * f.inverse() == e == f.inverse() * f
    assert f ** f.order() == e


def test_closure_examples():
    assert closure([Permutation.identity(3)]).order == 1
    assert closure([Permutation([1, 0])]).order == 2
    G = closure([Permutation.from_cycles(3, (0, 1)), Permutation.from_cycles(3, (1, 2))])
    assert G.elements == frozenset(Permutation(p) for p in itertools.permutations(range(3)))


def test_closure_independent_of_generator_order():
    gens = [Permutation.from_cycles(4, (0, 1)), Permutation.from_cycles(4, (1, 2, 3))]
    assert closure(gens).elements == closure(gens[::-1]).elements


def test_closure_cap():
    with pytest.raises(CapExceeded) as info:
        closure(symmetric_group(4).generators, cap=10)
    assert info.value.witness["partial"] == 11


def test_closure_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        closure([Permutation([1, 0]), Permutation([0, 1, 2])])


def test_commutator_examples():
    g = Permutation.from_cycles(3, (0, 1))
    h = Permutation.from_cycles(3, (1, 2))
    assert commutator(g, g).is_identity()
    # (0 2 1): 0 -> 2 -> 1 -> 0
    assert commutator(g, h) == Permutation([2, 0, 1])
    a, b = Permutation.from_cycles(4, (0, 1)), Permutation.from_cycles(4, (2, 3))
    assert commutator(a, b).is_identity()


def test_engel_pair_examples():
    g = Permutation.from_cycles(3, (0, 1))
    assert is_engel_pair(g, Permutation.identity(3), 1)
    c = Permutation.from_cycles(3, (0, 1, 2))
    # [g, c] is a 3-cycle, which commutes with c
    assert is_engel_pair(g, c, 2)
    # [c, g] = c forever
    for bound in (1, 6, 100):
        assert not is_engel_pair(c, g, bound)


def test_engel_groups():
    assert is_engel_group(cyclic_group(5))
    assert not is_engel_group(symmetric_group(3))
    assert engel_witness(symmetric_group(3)) is not None
    assert is_engel_group(dihedral_group(4))


def test_nilpotency():
    assert is_nilpotent(cyclic_group(6)) == (True, 1)
    ok, cls = is_nilpotent(symmetric_group(3))
    assert not ok and cls is None
    assert lower_central_series(symmetric_group(3))[-1].order == 3
    assert is_nilpotent(dihedral_group(4)) == (True, 2)
    assert is_nilpotent(closure([], degree=3)) == (True, 0)


@pytest.mark.parametrize("G", [cyclic_group(4), dihedral_group(3), dihedral_group(4), symmetric_group(4)])
def test_engel_matches_nilpotent(G):
    assert is_engel_group(G) == is_nilpotent(G)[0]


def test_group_json_roundtrip():
    G = dihedral_group(4)
    G2 = PermGroup.from_json(G.to_json())
    assert G2.elements == G.elements and G2.to_json() == G.to_json()
