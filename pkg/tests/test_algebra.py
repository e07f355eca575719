from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobdim.algebra import (
    NotAdmissible,
    associativity_defects,
    build_algebra,
    count_in,
    count_out,
    dim_hom,
    longest_in,
    longest_out,
    multiply,
    unit,
)
from frobdim.classify import DWitness, e6_templates
from frobdim.families import d_core_with_tails, d_cycle_with_spikes, linear_A, tail_into_cycle, tree_D, tree_E6
from frobdim.quiver import Quiver, QuiverError, Relation, enumerate_mutation_class, parse_quiver_with_relations
from frobdim.relations import BoundQuiver, bound_quiver, relations_D

from conftest import algebra_of, quiver

ONE = Fraction(1)


def core_algebra():
    a, b, c, d = 1, 2, 3, 4
    q = quiver([(b, d), (d, c), (c, a), (c, b), (a, d)])
    w = DWitness("II", a=a, b=b, c=c, d=d, parts={c: frozenset({c}), d: frozenset({d})})
    return build_algebra(BoundQuiver(q, tuple(relations_D(q, w))))


def test_linear_A3_dimension():
    a = algebra_of(linear_A(3))
    assert a.dim == 6
    assert a.basis[-1] == (1, 2, 3)


def test_saturated_triangle_dimension():
    assert algebra_of(quiver([(1, 2), (2, 3), (3, 1)])).dim == 6


def test_core_dimension_and_commuting_class():
    a = core_algebra()
    assert a.dim == 10
    assert dim_hom(a, 3, 4) == 1
    assert a.reduce_path((3, 2, 4)) == a.reduce_path((3, 1, 4)) == {a.index((3, 1, 4)): ONE}


def test_dim_hom():
    a = algebra_of(linear_A(3))
    assert dim_hom(a, 1, 3) == 1 and dim_hom(a, 3, 1) == 0
    tri = algebra_of(quiver([(1, 2), (2, 3), (3, 1)]))
    assert dim_hom(tri, 1, 3) == 0
    with pytest.raises(QuiverError):
        dim_hom(tri, 1, 9)


def test_path_lengths():
    n = 5
    a = algebra_of(linear_A(n))
    assert longest_in(a, n) == n - 1 and longest_out(a, 1) == n - 1
    b = algebra_of(tail_into_cycle(3))
    bv = 5  # b = n + 2
    assert longest_in(b, bv) == 4 and longest_out(b, bv) == 1
    single = build_algebra(bound_quiver(Quiver.from_pairs([], [1])))
    assert longest_in(single, 1) == longest_out(single, 1) == 0


def test_path_counts():
    m = 3
    a = algebra_of(d_core_with_tails(m, 2))
    d = 4
    assert count_in(a, d) == 4
    assert count_out(a, d) == m + 1
    assert count_in(algebra_of(linear_A(2)), 1) == 0


def test_multiplication():
    a = core_algebra()
    e = {v: {a.idempotents[v]: ONE} for v in (1, 2)}
    assert multiply(a, e[1], e[1]) == e[1]
    assert multiply(a, e[1], e[2]) == {}
    alpha, delta = {a.index((3, 2)): ONE}, {a.index((2, 4)): ONE}
    beta, gamma = {a.index((3, 1)): ONE}, {a.index((1, 4)): ONE}
    assert multiply(a, alpha, delta) == multiply(a, beta, gamma) != {}
    tri = algebra_of(quiver([(1, 2), (2, 3), (3, 1)]))
    assert multiply(tri, {tri.index((1, 2)): ONE}, {tri.index((2, 3)): ONE}) == {}


def test_length_mixing_relation():
    # commutativity between a length-2 and a length-3 path
    nine = e6_templates()[8].quiver()
    a = algebra_of(nine)
    assert a.reduce_path((2, 4, 5)) == a.reduce_path((2, 3, 6, 5)) != {}


def test_not_admissible():
    q, rels = parse_quiver_with_relations(
        "vertices 5\narrow a 1 2\narrow b 2 3\narrow c 3 4\narrow d 4 1\narrow e 4 5\nzero 3 4 5\n")
    with pytest.raises(NotAdmissible):
        build_algebra(bound_quiver(q, rels))


CORPUS = ([linear_A(n) for n in range(1, 6)]
          + enumerate_mutation_class(linear_A(5))
          + enumerate_mutation_class(tree_D(5))
          + enumerate_mutation_class(tree_E6())[::3]
          + [d_cycle_with_spikes(k, m) for k in (3, 4) for m in (0, 1, 5)])


@pytest.mark.parametrize("q", CORPUS, ids=lambda q: "-".join(f"{s}{t}" for s, t in sorted(q.pairs())))
def test_structural_invariants(q):
    a = algebra_of(q)
    assert associativity_defects(a) == 0
    one = unit(a)
    for x in range(a.dim):
        assert multiply(a, one, {x: ONE}) == {x: ONE} == multiply(a, {x: ONE}, one)
    assert sum(dim_hom(a, i, j) for i in q.vertices for j in q.vertices) == a.dim
    assert all(dim_hom(a, i, j) <= 1 for i in q.vertices for j in q.vertices)
    r = a.nilpotency_index()
    assert r <= a.truncation + 1
    for p in a.nonzero_paths():
        assert len(p) - 1 < r


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(CORPUS), st.data())
def test_reduction_is_compatible_with_multiplication(q, data):
    a = algebra_of(q)
    p = data.draw(st.sampled_from(a.nonzero_paths()))
    for w in q.successors(p[-1]):
        arrow = {a.index((p[-1], w)): ONE}
        assert a.reduce_path(p + (w,)) == multiply(a, a.reduce_path(p), arrow)


def test_idempotent_action():
    a = algebra_of(d_core_with_tails(1, 1))
    for x, p in enumerate(a.basis):
        for v in a.quiver.vertices:
            ev = {a.idempotents[v]: ONE}
            assert multiply(a, ev, {x: ONE}) == ({x: ONE} if p[0] == v else {})
            assert multiply(a, {x: ONE}, ev) == ({x: ONE} if p[-1] == v else {})


def test_explicit_non_family_relations():
    q, rels = parse_quiver_with_relations(
        "vertices 4\narrow a 1 2\narrow b 2 4\narrow c 1 3\narrow d 3 4\ncomm 1 2 4 = 1 3 4\n")
    a = build_algebra(bound_quiver(q, rels))
    assert a.dim == 4 + 4 + 1
    assert Relation("comm", (1, 2, 4), (1, 3, 4)) in a.bound.relations
