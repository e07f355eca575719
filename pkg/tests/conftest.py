from functools import lru_cache

import pytest

from frobdim.algebra import build_algebra
from frobdim.quiver import Quiver
from frobdim.relations import bound_quiver

_ACCEPTANCE: list[str] = []

# Quivers reused across modules, named by shape.
TRIANGLE_FORK = [(1, 2), (2, 5), (5, 1), (2, 3), (4, 3)]
TRIANGLE_TAIL = [(1, 2), (2, 5), (5, 1), (2, 3), (3, 4)]
TRIANGLE_LONG_TAIL = [(1, 2), (2, 5), (5, 1), (2, 3), (3, 4), (4, 6)]
TRIANGLE_TWO_LEAVES = [(2, 1), (2, 3), (3, 5), (5, 2), (3, 4), (5, 6)]
TWENTY_VERTEX = [
    (2, 1), (2, 16), (3, 2), (4, 3), (5, 4), (5, 6), (6, 10), (6, 7), (7, 8), (8, 14), (8, 9),
    (16, 17), (16, 3), (10, 5), (10, 11), (14, 7), (15, 14), (20, 15), (19, 18), (18, 11),
    (11, 12), (12, 18), (12, 13),
]


def quiver(pairs) -> Quiver:
    return Quiver.from_pairs(pairs)


@lru_cache(maxsize=None)
def _algebra_cached(pairs: tuple, vertices: tuple):
    return build_algebra(bound_quiver(Quiver.from_pairs(pairs, vertices)))


def algebra_of(q: Quiver):
    """Build (and memoise) the algebra of a quiver with generated relations."""
    return _algebra_cached(tuple(sorted(q.pairs())), tuple(q.vertices))


@pytest.fixture
def acceptance_report():
    return _ACCEPTANCE.append


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
