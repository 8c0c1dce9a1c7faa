from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braceforge.brace import associated_subsolution, brace_to_json
from braceforge.errors import CapExceeded, DegreeMismatch, IndexOutOfRange
from braceforge.fixtures import b4, sol4, swap2
from braceforge.solution import is_isomorphic, trivial_solution
from braceforge.structure_group import (
    GElement,
    check_binomial_identity,
    check_eq2_recursion,
    check_nonabelian,
    check_theorem_one,
    e_sequence,
    embed_finite_brace,
    from_word,
    generator,
    identity,
    lemma_nil_criterion,
    nonabelian_witness,
    socle_index,
    star_vector,
    theorem_one_witness,
)


def _matrix(p):
    m = p.degree
    M = np.zeros((m, m), dtype=object)
    for i in range(m):
        M[p(i), i] = 1
    return M


def test_generator_is_unit_vector_with_row_permutation():
    S = swap2()
    g = generator(S, 0)
    assert g.vec == (1, 0) and g.perm.images == (1, 0)
    with pytest.raises(IndexOutOfRange):
        generator(S, 2)


def test_semidirect_product_rule():
    S = swap2()
    x, y = generator(S, 0), generator(S, 1)
    # (e_0, s)(e_1, s) = (e_0 + s(e_1), id) = (2 e_0, id)
    assert (x * y).vec == (2, 0) and (x * y).perm.is_identity()
    assert x * x.inverse() == identity(2)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.sampled_from([1, -1])), max_size=5),
       st.lists(st.tuples(st.integers(0, 3), st.sampled_from([1, -1])), max_size=5),
       st.lists(st.tuples(st.integers(0, 3), st.sampled_from([1, -1])), max_size=5))
def test_structure_group_associative(w1, w2, w3):
    S = sol4()
    a, b, c = (from_word(S, w) for w in (w1, w2, w3))
    assert (a * b) * c == a * (b * c)
    assert a * a.inverse() == identity(4)
    # a o b = a + L_a(b), with L_a the permutation part
    assert (a * b).vec == a.add(GElement(a.perm.act_on_vector(b.vec), b.perm))


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        identity(2) * identity(3)


def test_e_sequence_closed_form():
    S = swap2()
    x, y = generator(S, 0), generator(S, 1)
    e = e_sequence(x, y, 8)
    for k, ek in enumerate(e, start=1):
        assert ek == tuple((-2) ** (k - 1) * c for c in (1, -1))


@settings(max_examples=80, deadline=None)
@given(data=st.data())
def test_e_sequence_matrix_oracle(data):
    S = data.draw(st.sampled_from([swap2(), sol4(), trivial_solution(3)]))
    word = data.draw(st.lists(st.tuples(st.integers(0, S.size - 1), st.sampled_from([1, -1])), max_size=5))
    y = data.draw(st.integers(0, S.size - 1))
    a, b = from_word(S, word), generator(S, y)
    D = _matrix(a.perm) - np.identity(S.size, dtype=object)
    v = np.array(b.vec, dtype=object)
    for k, ek in enumerate(e_sequence(a, b, 6), start=1):
        v = D.dot(v)
        assert ek == tuple(int(c) for c in v), k


def test_binomial_and_eq2_examples():
    S = swap2()
    x, y = generator(S, 0), generator(S, 1)
    for m in range(1, 7):
        assert check_binomial_identity(x, y, m)
    assert check_eq2_recursion(x, y, 5)


def test_binomial_check_detects_tampering():
    S = swap2()
    x, y = generator(S, 0), generator(S, 1)
    e = e_sequence(x, y, 3)
    wrong = tuple(b + comb(3, 1) * e[0][i] for i, b in enumerate(y.vec))
    assert wrong != (x**3).perm.act_on_vector(y.vec)


def test_iterated_star_vanishing_examples():
    S = swap2()
    assert lemma_nil_criterion(generator(S, 0), generator(S, 1)) == (False, None)
    T = trivial_solution(3)
    assert lemma_nil_criterion(generator(T, 0), generator(T, 2)) == (True, 1)
    big = lemma_nil_criterion(generator(S, 0), generator(S, 1), bound=60)
    assert big == (False, None)


def test_nonvanishing_pair_examples():
    assert theorem_one_witness(trivial_solution(3)) is None
    assert check_theorem_one(trivial_solution(3))
    assert theorem_one_witness(swap2()) == (0, 0)
    assert check_theorem_one(swap2())


def test_nonabelian_examples():
    assert nonabelian_witness(swap2()) == (0, 1)
    assert nonabelian_witness(trivial_solution(4)) is None
    assert check_nonabelian(sol4())


def test_socle_index():
    assert socle_index(trivial_solution(3)) == 1
    assert socle_index(swap2()) == 2
    assert socle_index(sol4()) == 2


def test_embed_swap2_is_b4():
    E = embed_finite_brace(swap2())
    assert E.modulus == 2 and E.brace.order == 4
    data = brace_to_json(E.brace)
    data.pop("mul_generators", None)
    assert data == brace_to_json(b4())
    assert E.inject_vectors() == [[1, 0], [0, 1]]


def test_embed_trivial_one_point():
    E = embed_finite_brace(trivial_solution(1))
    assert E.modulus == 2 and E.brace.order == 2
    assert E.to_json()["inject"] == [[1]]


def test_embed_cap():
    with pytest.raises(CapExceeded):
        embed_finite_brace(sol4(), cap=8)


def test_embedding_restricts_to_input(all_solutions):
    for S in all_solutions:
        E = embed_finite_brace(S)
        assert E.brace.order == max(socle_index(S), 2) ** S.size
        assert len(set(E.inject)) == S.size
        R = associated_subsolution(E.brace, list(E.inject))
        assert R == S
        assert is_isomorphic(R, S)[0]
