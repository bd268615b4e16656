from __future__ import annotations

from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import consistent
from strategies import graphs
from thinness.errors import ParameterError
from thinness.families import complement_matching, complete, cycle, empty, path
from thinness.graph import Graph, complement
from thinness.representation import (
    VARIANTS, ConsistencyViolation, Partition, Variant, VertexOrdering, as_variant, check_consistent,
    incompatibility_graph, is_consistent, variant_conflict_graph,
)
from thinness.solver import min_classes_for_ordering

ONE = lambda n: Partition([0] * n)  # noqa: E731


def test_variant_lattice_names():
    names = {(v.proper, v.class_constraint): name for name, v in VARIANTS.items()}
    assert names == {
        (False, "none"): "thin", (True, "none"): "pthin",
        (False, "independent"): "indthin", (True, "independent"): "indpthin",
        (False, "complete"): "compthin", (True, "complete"): "comppthin",
    }
    for name, v in VARIANTS.items():
        assert Variant.parse(name) == v == Variant.from_dict(v.to_dict()) == as_variant(v)
    with pytest.raises(ParameterError):
        Variant.parse("bogus")
    with pytest.raises(ParameterError):
        Variant(False, "weird")


def test_ordering_and_partition_validation():
    o = VertexOrdering([2, 0, 1])
    assert o.position == (1, 2, 0) and list(o.reversed()) == [1, 0, 2]
    for bad in ([0, 0, 1], [0, 2], [1, 2, 3]):
        with pytest.raises(ParameterError):
            VertexOrdering(bad)
    with pytest.raises(ParameterError):
        Partition([0, 2])
    assert Partition.compact(["x", "y", "x"]) == Partition([0, 1, 0])
    assert Partition.from_classes(3, [[2], [0, 1]]).classes() == [[2], [0, 1]]
    with pytest.raises(ParameterError):
        Partition.from_classes(3, [[0], [0, 1, 2]])
    with pytest.raises(ParameterError):
        Partition.from_classes(3, [[0]])


def test_size_mismatch():
    with pytest.raises(ParameterError):
        check_consistent(path(3), VertexOrdering([0, 1]), ONE(2))


def test_spec_examples_for_consistency():
    g = complement_matching(2)
    part = Partition.compact([v // 2 for v in range(4)])  # classes are the nonadjacent pairs
    for order in permutations(range(4)):
        assert is_consistent(g, VertexOrdering(order), part)
    assert is_consistent(path(4), VertexOrdering.identity(4), ONE(4))
    bad = check_consistent(cycle(4), VertexOrdering.identity(4), ONE(4))
    assert bad == ConsistencyViolation((0, 1, 3), "forward", (0, 1, 3))


def test_class_constraint_violations():
    bad = check_consistent(path(2), VertexOrdering.identity(2), ONE(2), "indthin")
    assert bad.kind == "class_not_independent" and bad.triple == (0, 0, 1)
    bad = check_consistent(empty(2), VertexOrdering.identity(2), ONE(2), "compthin")
    assert bad.kind == "class_not_complete"


def test_incompatibility_examples():
    assert incompatibility_graph(complete(4), VertexOrdering.identity(4)).num_edges() == 0
    for strong in (False, True):
        assert incompatibility_graph(path(4), VertexOrdering.identity(4), strong).num_edges() == 0
    c4 = cycle(4)  # edges 0-1, 1-2, 2-3, 3-0
    assert incompatibility_graph(c4, VertexOrdering.identity(4)).edges() == [(0, 1)]
    assert incompatibility_graph(c4, VertexOrdering.identity(4), True).edges() == [(0, 1), (2, 3)]


def test_conflict_graph_examples():
    assert variant_conflict_graph(complete(3), VertexOrdering.identity(3), "indthin") == complete(3)
    assert variant_conflict_graph(cycle(4), VertexOrdering.identity(4), "thin").edges() == [(0, 1)]
    assert variant_conflict_graph(empty(3), VertexOrdering.identity(3), "compthin") == complete(3)


def test_min_classes_examples():
    assert min_classes_for_ordering(complete(5), VertexOrdering.identity(5), "thin")[0] == 1
    for order in permutations(range(4)):
        assert min_classes_for_ordering(cycle(4), VertexOrdering(order), "thin")[0] == 2
    assert min_classes_for_ordering(path(4), VertexOrdering.identity(4), "pthin")[0] == 1


@given(graphs(max_n=6), st.data())
def test_checker_matches_literal_definition(g, data):
    order = data.draw(st.permutations(list(range(g.n))))
    labels = data.draw(st.lists(st.integers(0, 2), min_size=g.n, max_size=g.n))
    part = Partition.compact(labels)
    for name, v in VARIANTS.items():
        expect = consistent(g, order, part.class_of, v.proper, v.class_constraint)
        assert is_consistent(g, VertexOrdering(order), part, v) == expect


@given(graphs(max_n=7), st.data())
def test_conflict_graph_characterizes_consistency(g, data):
    order = VertexOrdering(data.draw(st.permutations(list(range(g.n)))))
    for name in VARIANTS:
        conflict = variant_conflict_graph(g, order, name)
        k, part = min_classes_for_ordering(g, order, name)
        assert is_consistent(g, order, part, name)
        assert all(part.class_of[u] != part.class_of[v] for u, v in conflict.edges())
    weak = incompatibility_graph(g, order)
    strong = incompatibility_graph(g, order, True)
    assert set(weak.edges()) <= set(strong.edges())


@given(graphs(max_n=7), st.data())
def test_incompatibility_graph_is_cocomparability(g, data):
    # the positions order the complement of G_< transitively
    order = VertexOrdering(data.draw(st.permutations(list(range(g.n)))))
    co = complement(incompatibility_graph(g, order))
    pos = order.position
    for a, b in co.edges():
        for c in co.neighbors(b):
            if pos[a] < pos[b] < pos[c] or pos[c] < pos[b] < pos[a]:
                assert co.has_edge(a, c)
