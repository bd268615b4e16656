from __future__ import annotations

import pytest
from hypothesis import given

from oracles import to_nx
from strategies import graphs
from thinness.errors import ParameterError
from thinness.graph import Graph, bits, complement, induced_subgraph, popcount, relabel
import networkx as nx


def test_basic_queries():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert g.edges() == [(0, 1), (1, 2), (2, 3)]
    assert g.neighbors(1) == frozenset({0, 2})
    assert g.degrees() == [1, 2, 2, 1]
    assert g.has_edge(2, 1) and not g.has_edge(0, 2)
    assert g.num_edges() == 3 and g.is_connected()
    assert not g.is_complete() and not g.is_edgeless()


def test_bit_helpers():
    assert list(bits(0b10110)) == [1, 2, 4]
    assert popcount(0b10110) == 3


@pytest.mark.parametrize("n, edges", [(-1, []), (2, [(0, 2)]), (2, [(1, 1)]), (3, [(0, 1, 2)])])
def test_rejects_bad_input(n, edges):
    with pytest.raises(ParameterError):
        Graph(n, edges)


def test_from_masks_checks_symmetry():
    with pytest.raises(ParameterError):
        Graph.from_masks([0b10, 0b00])


def test_malformed_json_record():
    with pytest.raises(ParameterError):
        Graph.from_json('{"edges": []}')


@given(graphs(min_n=0, max_n=8))
def test_json_round_trip_is_bit_exact(g):
    text = g.to_json()
    assert Graph.from_json(text) == g
    assert Graph.from_json(text).to_json() == text


@given(graphs(min_n=0, max_n=8))
def test_dot_round_trip_is_bit_exact(g):
    text = g.to_dot()
    assert Graph.from_dot(text) == g
    assert Graph.from_dot(text).to_dot() == text


def test_json_edges_sorted():
    g = Graph(3, [(2, 1), (1, 0)])
    assert g.to_dict() == {"n": 3, "edges": [[0, 1], [1, 2]]}


@given(graphs(max_n=8))
def test_matches_networkx(g):
    h = to_nx(g)
    assert sorted(map(sorted, g.components())) == sorted(sorted(c) for c in nx.connected_components(h))
    assert g.degrees() == [h.degree(v) for v in range(g.n)]
    assert complement(complement(g)) == g
    assert nx.is_isomorphic(to_nx(complement(g)), nx.complement(h))


@given(graphs(max_n=7))
def test_induced_subgraph_and_relabel(g):
    keep = [v for v in range(g.n) if v % 2 == 0]
    sub = induced_subgraph(g, keep)
    assert nx.is_isomorphic(to_nx(sub), to_nx(g).subgraph(keep))
    perm = list(reversed(range(g.n)))
    r = relabel(g, perm)
    assert all(r.has_edge(perm[u], perm[v]) for u, v in g.edges())
    assert r.num_edges() == g.num_edges()


def test_hash_and_equality():
    assert Graph(3, [(0, 1)]) == Graph(3, [(1, 0)])
    assert len({Graph(3, [(0, 1)]), Graph(3, [(1, 0)])}) == 1
    assert Graph(3, [(0, 1)]) != Graph(4, [(0, 1)])
