import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braceforge import brace as br
from braceforge.config import Limits
from braceforge.errors import AxiomViolation, CapExceeded, MalformedInput, NotAnIdeal
from braceforge.fixtures import b4, sol4
from braceforge.solution import INFINITE, is_isomorphic, mpl, retract

# B4 element indices: 0=(0,0) 1=(0,1) 2=(1,0) 3=(1,1)


def test_b4_basics():
    B = b4()
    assert B.order == 4 and B.zero == 0
    assert B.vector(2) == (1, 0)
    assert B.star(2, 2) == 3
    assert B.mul(2, 2) == 3  # (1,0) + (0,1)
    assert br.validate_brace(B) == {"valid": True, "order": 4, "method": "exhaustive"}


def test_b4_socle_and_series():
    B = b4()
    assert br.socle(B).sorted() == [0, 3]
    right, rn = br.right_series(B)
    left, ln = br.left_series(B)
    assert [c.order for c in right] == [4, 2, 1] and rn
    assert [c.order for c in left] == [4, 2, 1] and ln
    assert right[1].sorted() == [0, 3]


def test_b4_ideals():
    B = b4()
    assert br.is_ideal(B, br.socle(B))
    assert br.is_ideal(B, br.whole(B)) and br.is_ideal(B, br.zero_subset(B))
    w = br.ideal_witness(B, br.subset(B, [0, 2]))
    assert w["condition"] == "lambda invariant"
    with pytest.raises(NotAnIdeal):
        br.quotient(B, br.subset(B, [0, 2]))


def test_quotient_projection_is_morphism(small_braces):
    for B in small_braces[:12] + [b4()]:
        soc = br.socle(B)
        Q, proj = br.quotient(B, soc)
        assert Q.order * soc.order == B.order
        br.validate_brace(Q)
        for a in B.elements:
            for b in B.elements:
                assert proj[B.add(a, b)] == Q.add(proj[a], proj[b])
                assert proj[B.mul(a, b)] == Q.mul(proj[a], proj[b])


def test_mutated_b4_rejected():
    B = br.to_table(b4())
    lam = B.lam_table().copy()
    lam[1] = [0, 1, 2, 3]
    with pytest.raises(AxiomViolation) as info:
        br.validate_brace(br.TableBrace(B.add_table(), lam, 0))
    assert info.value.to_json()["which"]
    lam = B.lam_table().copy()
    lam[1] = [0, 1, 3, 2]  # not additive
    with pytest.raises(AxiomViolation):
        br.validate_brace(br.TableBrace(B.add_table(), lam, 0))


def test_trivial_brace():
    B = br.trivial_brace([2, 2])
    assert isinstance(B, br.VectorBrace) and B.order == 4
    assert br.socle(B).order == 4
    assert br.right_series(B)[0][-1].is_zero()
    T = br.trivial_brace([2, 3])
    assert isinstance(T, br.TableBrace) and T.order == 6
    br.validate_brace(T)
    with pytest.raises(MalformedInput):
        br.trivial_brace([0])


def _naive_star_span(B, S, T):
    out = br.span(B, [B.star(s, t) for s in S.members for t in T.members])
    return out.members


def test_star_span_against_all_pairs(small_braces):
    for B in small_braces:
        if B.order > 81:
            continue
        chain, _ = br.right_series(B)
        full = br.whole(B)
        for cur, nxt in zip(chain, chain[1:]):
            assert nxt.members == _naive_star_span(B, cur, full)
        chain, _ = br.left_series(B)
        for cur, nxt in zip(chain, chain[1:]):
            assert nxt.members == _naive_star_span(B, full, cur)


def test_socle_oracle(small_braces):
    for B in small_braces:
        L = B.lam_table()
        ident = np.arange(B.order)
        assert br.socle(B).sorted() == [a for a in B.elements if np.array_equal(L[a], ident)]


def test_series_terms_are_ideals(small_braces):
    for B in small_braces:
        if B.order > 81:
            continue
        for term in br.right_series(B)[0]:
            assert br.is_ideal(B, term)


def test_non_right_nilpotent_exists(embeddings):
    found = [E.brace for _, E in embeddings if not br.right_series(E.brace)[1]]
    assert found
    chain, _ = br.right_series(found[0])
    assert not chain[-1].is_zero()
    assert br.check_proposition_five(found[0])["mpl"] == "infinite"


@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_brace_identity_random(data, small_braces):
    B = data.draw(st.sampled_from(small_braces))
    a, b, c = (data.draw(st.integers(0, B.order - 1)) for _ in range(3))
    assert B.add(B.mul(a, B.add(b, c)), a) == B.add(B.mul(a, b), B.mul(a, c))
    assert B.lam(a, B.add(b, c)) == B.add(B.lam(a, b), B.lam(a, c))
    assert B.lam(B.mul(a, b), c) == B.lam(a, B.lam(b, c))
    assert B.mul(a, B.inv(a)) == B.zero
    # star is left distributive
    assert B.star(a, B.add(b, c)) == B.add(B.star(a, b), B.star(a, c))


def test_associated_solution_b4():
    S = sol4()
    assert S.size == 4 and mpl(S) == 2
    assert retract(S).class_of == (0, 1, 1, 0)
    with pytest.raises(CapExceeded):
        br.associated_solution(b4(), Limits(table_limit=2))


def test_retraction_without_table_matches(small_braces):
    low = Limits(table_limit=1)
    for B in small_braces:
        full = retract(br.associated_solution(B))
        fast = br.associated_retraction(B, low)
        assert fast.class_of == full.class_of
        assert is_isomorphic(fast.retracted, full.retracted)[0]
        m_low, m_full = br.associated_mpl(B, low), mpl(br.associated_solution(B))
        assert m_low == m_full or (m_low is INFINITE and m_full is INFINITE)


def test_prop5_b4():
    out = br.check_proposition_five(b4())
    assert out == {"mpl": 2, "right_index": 2, "right_series_orders": [4, 2, 1], "holds": True}


def test_socle_commutator_b4():
    assert br.socle_commutator_witness(b4()) is None


def test_retract_iso_b4():
    assert br.retract_iso_check(b4())


def test_two_sided_b4():
    assert br.is_two_sided(b4()) == (True, None)


def test_two_sided_reduced_agrees(small_braces):
    reduced = Limits(exhaustive_limit=0)
    seen = set()
    for B in small_braces:
        full, _ = br.is_two_sided(B)
        fast, _ = br.is_two_sided(B, reduced)
        assert full == fast
        seen.add(full)
    assert seen == {True, False}


def test_structural_validation_agrees(small_braces):
    structural = Limits(exhaustive_limit=0)
    for B in small_braces:
        assert br.validate_brace(B, structural)["method"] == "structural"


def test_structural_validation_rejects():
    swap = [[0, 1], [1, 0]]
    B = br.VectorBrace(2, 2, [swap], [0, 0, 0, 0])
    with pytest.raises(AxiomViolation):
        br.validate_brace(B, Limits(exhaustive_limit=0))
    with pytest.raises(AxiomViolation):
        br.validate_brace(B)


def test_sampled_validation():
    T = br.to_table(b4())
    assert br.validate_brace(T, Limits(exhaustive_limit=0, sample_size=500))["method"] == "sampled"


def test_json_roundtrip(small_braces):
    for B in [b4(), br.to_table(b4()), br.trivial_brace([2, 3])] + small_braces[:5]:
        data = json.loads(json.dumps(br.brace_to_json(B)))
        B2 = br.brace_from_json(data)
        assert br.brace_to_json(B2) == br.brace_to_json(B)
        assert np.array_equal(B2.lam_table(), B.lam_table())
    with pytest.raises(MalformedInput):
        br.brace_from_json({"repr": "vector", "modulus": 2})
    with pytest.raises(MalformedInput):
        br.brace_from_json({"repr": "matrix"})
