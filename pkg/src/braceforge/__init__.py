"""Finite set-theoretic solutions of the Yang-Baxter equation and finite left braces."""

from .brace import (
    BraceSubset,
    FiniteBrace,
    TableBrace,
    VectorBrace,
    associated_solution,
    check_proposition_five,
    check_socle_commutator,
    is_ideal,
    is_two_sided,
    left_series,
    quotient,
    retract_iso_check,
    right_series,
    socle,
    star_span,
    trivial_brace,
    validate_brace,
)
from .config import DEFAULT_LIMITS, Limits
from .permgrp import PermGroup, Permutation, closure, commutator, is_engel_group, is_nilpotent
from .solution import INFINITE, Solution, is_isomorphic, mpl, retract, trivial_solution, validate_solution
from .structure_group import GElement, embed_finite_brace, generator, socle_index

__all__ = [name for name in dir() if not name.startswith("_")]
