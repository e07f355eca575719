import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobdim.families import linear_A, tree_D, tree_E6
from frobdim.quiver import (
    MutationClassTooLarge,
    Quiver,
    QuiverError,
    Relation,
    canonical_form,
    enumerate_mutation_class,
    format_quiver,
    is_isomorphic,
    mutate,
    parse_quiver,
    parse_quiver_with_relations,
    three_cycles,
    valency,
)

from conftest import TRIANGLE_FORK, TRIANGLE_TAIL, quiver


def test_parse_round_trip():
    text = "vertices 3\narrow a 1 2\narrow b 2 3\n"
    q = parse_quiver(text)
    assert q.pairs() == {(1, 2), (2, 3)}
    assert parse_quiver(format_quiver(q)) == q


def test_parse_relations_and_comments():
    text = """
    # square with one commutativity
    vertices 4
    arrow a 1 2
    arrow b 2 4
    arrow c 1 3
    arrow d 3 4   # trailing comment
    comm 1 2 4 = 1 3 4
    """
    q, rels = parse_quiver_with_relations(text)
    assert rels == [Relation("comm", (1, 2, 4), (1, 3, 4))]
    assert rels[0].to_line() == "comm 1 2 4 = 1 3 4"


@pytest.mark.parametrize("text, fragment", [
    ("arrow a 1 2\n", "vertices"),
    ("vertices 2\narrow a 1 1\n", "loop"),
    ("vertices 2\narrow a 1 2\narrow b 2 1\n", "2-cycle"),
    ("vertices 2\narrow a 1 2\narrow b 1 2\n", "parallel"),
    ("vertices 3\narrow a 1 2\narrow a 2 3\n", "duplicate"),
    ("vertices 2\narrow a 1 3\n", "out of range"),
    ("vertices 3\narrow a 1 2\nzero 1 2 3\n", "not a path"),
    ("vertices 3\narrow a 1 2\nfrob 1\n", "unknown statement"),
    ("vertices 3\narrow a 1 2\narrow b 2 3\ncomm 1 2 3 = 1 2 3\n", "differ"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(QuiverError, match=fragment):
        parse_quiver_with_relations(text)


def test_parse_error_carries_line_number():
    with pytest.raises(QuiverError) as info:
        parse_quiver("vertices 2\n\narrow a 1 5\n")
    assert info.value.line == 3


def test_mutate_sink_reverses():
    assert mutate(quiver([(1, 2)]), 2).pairs() == {(2, 1)}


def test_mutate_at_leaf_of_triangle_fork():
    assert mutate(quiver(TRIANGLE_FORK), 4).pairs() == set(TRIANGLE_TAIL)


def test_mutate_creates_and_cancels_arrows():
    # the composite 1 -> 2 -> 3 becomes a new arrow 1 -> 3
    q = mutate(quiver([(1, 2), (2, 3)]), 2)
    assert q.pairs() == {(2, 1), (3, 2), (1, 3)}
    assert mutate(q, 2).pairs() == {(1, 2), (2, 3)}


def test_mutate_rejects_double_arrows():
    q = quiver([(1, 2), (2, 3), (1, 4), (4, 3)])
    with pytest.raises(QuiverError, match="1.*3|parallel"):
        mutate(mutate(q, 2), 4)


def test_mutate_unknown_vertex():
    with pytest.raises(QuiverError):
        mutate(quiver([(1, 2)]), 7)


def test_three_cycles_and_valency():
    q = quiver(TRIANGLE_FORK)
    assert three_cycles(q) == [(1, 2, 5)]
    assert valency(q, 2) == 3


@pytest.mark.parametrize("n, size", [(2, 1), (3, 4), (4, 6), (5, 19), (6, 49), (7, 150)])
def test_type_A_class_sizes(n, size):
    assert len(enumerate_mutation_class(linear_A(n))) == size


@pytest.mark.parametrize("n, size", [(4, 6), (5, 26), (6, 80)])
def test_type_D_class_sizes(n, size):
    assert len(enumerate_mutation_class(tree_D(n))) == size


def test_E6_class_size():
    assert len(enumerate_mutation_class(tree_E6())) == 67


def test_enumeration_limit():
    with pytest.raises(MutationClassTooLarge):
        enumerate_mutation_class(linear_A(6), max_size=10)


def test_enumeration_is_deterministic():
    a = enumerate_mutation_class(linear_A(5))
    b = enumerate_mutation_class(linear_A(5))
    assert [canonical_form(q).key for q in a] == [canonical_form(q).key for q in b]


def test_isomorphism_returns_vertex_map():
    q1 = quiver([(1, 2), (2, 3), (3, 1), (3, 4)])
    q2 = quiver([(4, 3), (3, 2), (2, 4), (2, 1)])
    m = is_isomorphic(q1, q2)
    assert m is not None
    assert {(m[s], m[t]) for s, t in q1.pairs()} == q2.pairs()
    assert is_isomorphic(q1, quiver([(1, 2), (2, 3), (3, 1), (4, 3)])) is None


MEMBERS = enumerate_mutation_class(linear_A(6)) + enumerate_mutation_class(tree_D(5))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(MEMBERS), st.data())
def test_mutation_is_an_involution(q, data):
    k = data.draw(st.sampled_from(q.vertices))
    assert mutate(mutate(q, k), k).pairs() == q.pairs()


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(MEMBERS), st.permutations(range(6)))
def test_canonical_form_ignores_labels(q, perm):
    mapping = {v: perm[i] + 1 for i, v in enumerate(q.vertices)}
    assert canonical_form(q.relabel(mapping)).key == canonical_form(q).key


def test_canonical_form_separates_orientations():
    keys = {canonical_form(Quiver.from_pairs(p, range(1, 4))).key
            for p in itertools.product([(1, 2), (2, 1)], [(2, 3), (3, 2)])}
    # linear (two labellings agree), source, sink
    assert len(keys) == 3
