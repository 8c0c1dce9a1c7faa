import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braceforge.errors import NotABijection, NotInvariant, NotInvolutive, SizeMismatch, YBEViolation
from braceforge.fixtures import sol4, swap2
from braceforge.permgrp import closure
from braceforge.solution import (
    INFINITE,
    audit_solution,
    is_isomorphic,
    is_isomorphic_bruteforce,
    mpl,
    permutation_generators,
    relabel,
    retract,
    solution_from_json,
    solution_to_json,
    subsolution,
    trivial_solution,
    validate_solution,
)


def test_trivial_one_point():
    S = validate_solution([[0]])
    assert S.lam == ((0,),) and S.is_trivial()
    assert trivial_solution(1).lam == ((0,),)


def test_trivial_solution_rows_are_identity():
    S = trivial_solution(3)
    assert all(row == (0, 1, 2) for row in S.lam)
    assert validate_solution(trivial_solution(4).lam) == trivial_solution(4)
    assert S(0, 2) == (2, 0)


def test_swap2_right_action():
    S = swap2()
    for x, y in itertools.product(range(2), repeat=2):
        assert S(x, y) == ((y + 1) % 2, (x + 1) % 2)


def test_bad_two_point_table():
    with pytest.raises((NotABijection, NotInvolutive, YBEViolation)) as info:
        validate_solution([[0, 1], [1, 0]])
    assert info.value.witness is not None
    report = audit_solution([[0, 1], [1, 0]])
    assert "YBEViolation" in report


def test_degenerate_row():
    with pytest.raises(NotABijection):
        validate_solution([[0, 0], [0, 1]])


def test_supplied_rho_is_checked():
    S = swap2()
    validate_solution(S.lam, S.rho)
    with pytest.raises((NotInvolutive, NotABijection)):
        validate_solution(S.lam, [[0, 0], [1, 1]])


def _ybe_brute(S):
    """Plain-loop braid relation check, independent of the vectorised one."""
    r = S
    for x, y, z in itertools.product(range(S.size), repeat=3):
        a, b = r(x, y)
        b, c = r(b, z)
        a, b = r(a, b)
        u, v = r(y, z)
        p, q = r(x, u)
        q, w = r(q, v)
        if (a, b, c) != (p, q, w):
            return False
    return True


def test_validator_agrees_with_loops(small_corpus):
    for S in small_corpus:
        assert _ybe_brute(S)
    assert _ybe_brute(sol4())


def test_right_action_derivation(all_solutions):
    for S in all_solutions:
        for x in range(S.size):
            for y in range(S.size):
                u = S.lam[x][y]
                assert S.lam[u][S.rho[x][y]] == x


def test_retract_examples():
    R = retract(trivial_solution(3))
    assert R.retracted.size == 1 and set(R.class_of) == {0}
    assert retract(swap2()).retracted.size == 1
    R = retract(sol4())
    # elements 0=(0,0), 3=(1,1) have even weight
    assert R.class_of == (0, 1, 1, 0)
    assert R.retracted == trivial_solution(2)


def test_mpl_examples():
    assert mpl(trivial_solution(1)) == 0
    assert mpl(trivial_solution(2)) == 1
    assert mpl(swap2()) == 1
    assert mpl(sol4()) == 2


def test_mpl_recursion(all_solutions):
    for S in all_solutions:
        level = mpl(S)
        R = retract(S).retracted
        if R.size == S.size and S.size > 1:
            assert level is INFINITE
            assert retract(R).retracted.size == R.size
        elif S.size > 1:
            assert level == 1 + mpl(R)


def test_infinite_level_exists(corpus):
    assert any(mpl(S) is INFINITE for S in corpus[4])


def test_isomorphism_examples():
    S = swap2()
    assert is_isomorphic(S, S) == (True, [0, 1])
    assert is_isomorphic(trivial_solution(2), S) == (False, None)
    assert is_isomorphic(S, relabel(S, [1, 0]))[0]
    with pytest.raises(SizeMismatch):
        is_isomorphic(S, trivial_solution(3))


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_isomorphism_agrees_with_bruteforce(data, corpus):
    m = data.draw(st.integers(3, 4))
    S = data.draw(st.sampled_from(corpus[m]))
    T = data.draw(st.sampled_from(corpus[m]))
    phi = data.draw(st.permutations(list(range(m))))
    T = relabel(T, phi)
    fast, brute = is_isomorphic(S, T), is_isomorphic_bruteforce(S, T)
    assert fast[0] == brute[0]
    if fast[0]:
        w = fast[1]
        assert all(w[S.lam[x][y]] == T.lam[w[x]][w[y]] for x in range(m) for y in range(m))


def test_census_classes_pairwise_non_isomorphic(corpus):
    for m in (2, 3, 4):
        for S, T in itertools.combinations(corpus[m], 2):
            assert not is_isomorphic(S, T)[0]


def test_isomorphic_solutions_share_invariants(corpus):
    for S in corpus[4]:
        T = relabel(S, [2, 0, 3, 1])
        assert mpl(S) == mpl(T) or (mpl(S) is INFINITE and mpl(T) is INFINITE)
        assert closure(permutation_generators(S)).order == closure(permutation_generators(T)).order


def test_permutation_generators():
    assert [p.images for p in permutation_generators(trivial_solution(3))] == [(0, 1, 2)] * 3
    assert [p.images for p in permutation_generators(swap2())] == [(1, 0), (1, 0)]
    tau = (0, 2, 1, 3)
    assert [p.images for p in permutation_generators(sol4())] == [(0, 1, 2, 3), tau, tau, (0, 1, 2, 3)]


def test_trivial_iff_level_at_most_one(all_solutions):
    for S in all_solutions:
        if S.is_trivial():
            assert mpl(S) == (0 if S.size == 1 else 1)
            assert len(set(S.lam)) == 1


def test_subsolution_full_set():
    S = sol4()
    assert subsolution(S, range(4)) == S


def test_subsolution_not_invariant():
    S = sol4()
    found = None
    for k in (1, 2, 3):
        for sub in itertools.combinations(range(4), k):
            closed = all(a in sub and b in sub for x in sub for y in sub for a, b in [S(x, y)])
            if not closed:
                found = sub
                break
        if found:
            break
    assert found is not None
    with pytest.raises(NotInvariant) as info:
        subsolution(S, found)
    assert len(info.value.witness["pair"]) == 2


def test_json_roundtrip():
    S = sol4()
    text = json.dumps(solution_to_json(S))
    assert json.dumps(solution_to_json(solution_from_json(json.loads(text)))) == text
    assert "rho" not in solution_to_json(S)
    with_rho = solution_to_json(S, include_rho=True)
    assert solution_from_json(with_rho) == S
    assert list(with_rho) == ["size", "lambda", "rho"]
