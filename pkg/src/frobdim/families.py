"""Parameterised quiver families used as test corpora and by the CLI.

Vertices are numbered from 1 in the order documented for each family.
"""

from __future__ import annotations

import itertools
from typing import Iterator

from .classify import connecting_vertices
from .quiver import Quiver, enumerate_mutation_class


def linear_A(n: int) -> Quiver:
    """``1 -> 2 -> ... -> n``."""
    return Quiver.from_pairs([(i, i + 1) for i in range(1, n)], range(1, n + 1))


def acyclic_A(n: int) -> Iterator[Quiver]:
    """Every orientation of the path ``1 - 2 - ... - n``."""
    for signs in itertools.product((False, True), repeat=n - 1):
        pairs = [(i + 1, i) if flip else (i, i + 1) for i, flip in zip(range(1, n), signs)]
        yield Quiver.from_pairs(pairs, range(1, n + 1))


def tree_D(n: int) -> Quiver:
    """``1 -> 2 -> ... -> n-1`` with an extra arrow ``n-2 -> n``."""
    return Quiver.from_pairs([(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)])


def tree_E6() -> Quiver:
    return Quiver.from_pairs([(1, 2), (2, 3), (3, 4), (4, 5), (6, 3)])


def seed(kind: str, rank: int) -> Quiver:
    """Linear or tree representative of a Dynkin mutation class."""
    kind = kind.upper()
    if kind == "A":
        return linear_A(rank)
    if kind == "D":
        if rank < 4:
            raise ValueError("type D needs rank at least 4")
        return tree_D(rank)
    if kind == "E6" and rank == 6 or kind == "E" and rank == 6:
        return tree_E6()
    raise ValueError(f"unsupported type {kind!r}")


def tail_into_cycle(n: int) -> Quiver:
    """Path ``1 -> ... -> n -> a`` into the 3-cycle ``a -> b -> c -> a``.

    ``a, b, c = n + 1, n + 2, n + 3``.
    """
    a, b, c = n + 1, n + 2, n + 3
    return Quiver.from_pairs([(i, i + 1) for i in range(1, a)] + [(a, b), (b, c), (c, a)])


def _chain(start: int, first_new: int, length: int) -> list[tuple[int, int]]:
    """Arrows ``start -> first_new -> first_new + 1 -> ...`` with ``length`` arrows."""
    verts = [start] + list(range(first_new, first_new + length))
    return list(zip(verts, verts[1:]))


def d_fork(base: Quiver, c: int, sinks: bool = True) -> Quiver:
    """Attach two new valency-1 vertices at ``c``, both sinks or both sources.

    ``c`` must be a connecting vertex of ``base``. The new vertices are
    ``max + 1`` and ``max + 2``.
    """
    if c not in connecting_vertices(base):
        raise ValueError(f"vertex {c} is not a connecting vertex")
    a = max(base.vertices) + 1
    b = a + 1
    extra = [(c, a), (c, b)] if sinks else [(a, c), (b, c)]
    return Quiver.from_pairs(sorted(base.pairs()) + extra, list(base.vertices) + [a, b])


def d_core_with_tails(m: int, n: int) -> Quiver:
    """Commutative square core with a 3-cycle hanging from ``c``.

    Vertices: ``a, b, c, d = 1, 2, 3, 4``; ``x_1..x_m = 5..4+m``; ``y_1..y_n``
    follow. Arrows ``b->d, d->c, c->a, c->b, a->d``, the 3-cycle
    ``c -> x_1 -> y_1 -> c`` and tails ``x_1 -> ... -> x_m``, ``y_1 -> ... -> y_n``.
    """
    if m < 1 or n < 1:
        raise ValueError("tail lengths start at 1")
    a, b, c, d = 1, 2, 3, 4
    x = list(range(5, 5 + m))
    y = list(range(5 + m, 5 + m + n))
    pairs = [(b, d), (d, c), (c, a), (c, b), (a, d), (c, x[0]), (x[0], y[0]), (y[0], c)]
    pairs += list(zip(x, x[1:])) + list(zip(y, y[1:]))
    return Quiver.from_pairs(pairs)


def d_square_with_tails(lengths: tuple[int, int, int, int]) -> Quiver:
    """Oriented square with a 3-cycle and two tails at each of ``c`` and ``d``.

    Square ``c -> b -> d -> a -> c`` on ``a, b, c, d = 1, 2, 3, 4``. At ``c`` the
    3-cycle ``c -> x -> y -> c`` with tails leaving ``x`` and ``y``; at ``d`` the
    3-cycle ``d -> z -> t -> d`` with tails leaving ``z`` and ``t``. ``lengths``
    gives the number of tail arrows after ``x, y, z, t`` in that order.
    """
    a, b, c, d, x, y, z, t = range(1, 9)
    pairs = [(c, b), (b, d), (d, a), (a, c), (c, x), (x, y), (y, c), (d, z), (z, t), (t, d)]
    nxt = 9
    for start, ln in zip((x, y, z, t), lengths):
        pairs += _chain(start, nxt, ln)
        nxt += ln
    return Quiver.from_pairs(pairs)


def d_cycle_with_spikes(k: int, mask: int = 0) -> Quiver:
    """Oriented ``k``-cycle ``1 -> 2 -> ... -> k -> 1`` with optional spikes.

    Bit ``i`` of ``mask`` adds a vertex ``s`` with ``i+2 -> s -> i+1`` (indices
    mod ``k``), closing an oriented 3-cycle with the arrow ``i+1 -> i+2``.
    """
    if k < 3:
        raise ValueError("central cycle needs length at least 3")
    pairs = [(i, i % k + 1) for i in range(1, k + 1)]
    s = k
    for i in range(k):
        if mask >> i & 1:
            s += 1
            pairs += [(((i + 1) % k) + 1, s), (s, i + 1)]
    return Quiver.from_pairs(pairs)


def d_fork_corpus(max_base: int = 5) -> Iterator[Quiver]:
    """Forks on every connecting vertex of every type A quiver up to ``max_base`` vertices."""
    for n in range(2, max_base + 1):
        for base in enumerate_mutation_class(linear_A(n)):
            for c in sorted(connecting_vertices(base)):
                for sinks in (True, False):
                    yield d_fork(base, c, sinks)


def generated_D(max_size: int = 8) -> Iterator[Quiver]:
    """Deterministic sample of all four subtype patterns."""
    yield from d_fork_corpus(min(max_size - 2, 5))
    for m, n in itertools.product(range(1, 4), repeat=2):
        if 4 + m + n <= max_size + 4:
            yield d_core_with_tails(m, n)
    for lengths in itertools.product(range(2), repeat=4):
        yield d_square_with_tails(lengths)
    for k in range(3, 7):
        for mask in range(1 << k):
            yield d_cycle_with_spikes(k, mask)
