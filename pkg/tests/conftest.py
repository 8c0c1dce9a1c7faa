import pytest

from braceforge.census import enumerate_solutions
from braceforge.config import Limits
from braceforge.structure_group import embed_finite_brace

ACCEPTANCE_LIMITS = Limits(cap=10**5)


@pytest.fixture(scope="session")
def corpus():
    """All solutions with m <= 4 up to isomorphism, keyed by size."""
    return {m: enumerate_solutions(m) for m in range(1, 5)}


@pytest.fixture(scope="session")
def small_corpus(corpus):
    return [S for m in (1, 2, 3) for S in corpus[m]]


@pytest.fixture(scope="session")
def all_solutions(corpus):
    return [S for m in range(1, 5) for S in corpus[m]]


@pytest.fixture(scope="session")
def embeddings(all_solutions):
    """``(solution, EmbeddingResult)`` for every corpus solution whose brace fits the cap."""
    out = []
    for S in all_solutions:
        out.append((S, embed_finite_brace(S, ACCEPTANCE_LIMITS.cap)))
    return out


@pytest.fixture(scope="session")
def small_braces(embeddings):
    return [E.brace for _, E in embeddings if E.brace.order <= 256]
