from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Limits:
    """Size limits used by the enumerating algorithms.

    ``cap`` bounds group closures and embedded braces. ``table_limit`` is the
    largest brace order for which an explicit Cayley-table solution is built;
    above it only structured (vector form) algorithms are used.
    ``exhaustive_limit`` is the largest order for which brace axioms are
    checked on all triples rather than on a random sample.
    """

    cap: int = 10**6
    table_limit: int = 256
    exhaustive_limit: int = 256
    sample_size: int = 20000
    seed: int = 0


DEFAULT_LIMITS = Limits()
