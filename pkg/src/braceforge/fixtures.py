"""Small named objects used throughout the tests and the CLI."""

from __future__ import annotations

from .brace import VectorBrace, associated_solution
from .solution import Solution, validate_solution


def swap2() -> Solution:
    """Two points, both rows the transposition: ``r(x, y) = (y+1, x+1) mod 2``."""
    return validate_solution([[1, 0], [1, 0]])


def b4() -> VectorBrace:
    """Order-4 brace on ``(Z/2)^2`` with ``lam_v`` the coordinate swap to the power ``v0 + v1``.

    Elements in lexicographic order: 0=(0,0), 1=(0,1), 2=(1,0), 3=(1,1).
    """
    swap = [[0, 1], [1, 0]]
    ident = [[1, 0], [0, 1]]
    return VectorBrace(2, 2, [ident, swap], [0, 1, 1, 0])


def sol4() -> Solution:
    return associated_solution(b4())
