from __future__ import annotations

from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given

from oracles import (
    chromatic_number as ref_chromatic, is_interval_by_definition, is_transitively_orientable,
    max_induced_matching as ref_mim, to_nx,
)
from strategies import graphs
from thinness.errors import DomainError, SizeError
from thinness.families import complete, cycle, grid, path
from thinness.graph import Graph, complement, induced_subgraph
from thinness.invariants import (
    chromatic_coloring, chromatic_number, clique_number, comparability_ordering, diameter,
    graph_invariants, independence_number, interval_order, is_comparability_ordering, is_interval,
    isoperimetric_peak, longest_induced_path, max_induced_matching, maximal_cliques, min_private_neighbors,
    vertex_cover_number, vertex_isoperimetric_profile,
)


@given(graphs(max_n=8))
def test_cliques_match_networkx(g):
    h = to_nx(g)
    assert clique_number(g) == max(len(c) for c in nx.find_cliques(h))
    assert independence_number(g) == max(len(c) for c in nx.find_cliques(nx.complement(h)))
    assert sorted(maximal_cliques(g)) == sorted(sum(1 << v for v in c) for c in nx.find_cliques(h))
    assert vertex_cover_number(g) == g.n - independence_number(g)


@given(graphs(max_n=6))
def test_chromatic_matches_brute_force(g):
    k, colors = chromatic_coloring(g.masks)
    assert k == ref_chromatic(to_nx(g)) == chromatic_number(g)
    assert all(colors[u] != colors[v] for u, v in g.edges())


@given(graphs(max_n=7))
def test_induced_matching_and_path(g):
    m = max_induced_matching(g)
    assert len(m) == ref_mim(g)
    verts = [v for e in m for v in e]
    assert induced_subgraph(g, verts).num_edges() == len(m)
    p = longest_induced_path(g)
    sub = induced_subgraph(g, p)
    assert sub.num_edges() == max(len(p) - 1, 0)
    assert all(g.has_edge(a, b) for a, b in zip(p, p[1:]))


def test_induced_path_examples():
    assert len(longest_induced_path(cycle(6))) == 5
    assert len(longest_induced_path(complete(4))) == 2
    assert len(longest_induced_path(grid(3))) - 1 >= 4


@given(graphs(max_n=6))
def test_interval_recognition(g):
    assert is_interval(g) == is_interval_by_definition(g)
    order = interval_order(g)
    assert (order is not None) == is_interval(g)


@given(graphs(max_n=5))
def test_comparability_matches_orientation_search(g):
    order = comparability_ordering(g)
    assert (order is not None) == is_transitively_orientable(g)
    if order is not None:
        assert is_comparability_ordering(g, order)


def test_diameter_and_errors():
    assert diameter(path(5)) == 4
    with pytest.raises(DomainError):
        diameter(Graph(3, [(0, 1)]))
    inv = graph_invariants(Graph(3, [(0, 1)]))
    assert inv.diam is None and inv.omega == 2


def test_private_neighbors():
    k, (u, v) = min_private_neighbors(cycle(4))
    assert k == 0 and not cycle(4).has_edge(u, v)
    k, _ = min_private_neighbors(path(4))
    assert k == 0


def test_isoperimetric_profile():
    prof = vertex_isoperimetric_profile(path(4))
    assert [b for b, _ in prof] == [0, 1, 1, 1, 0]
    bv, s, x = isoperimetric_peak(complete(4))
    assert bv == 3 and s == 1
    with pytest.raises(SizeError):
        vertex_isoperimetric_profile(path(13))


@given(graphs(max_n=6))
def test_profile_is_minimum_over_sets(g):
    prof = vertex_isoperimetric_profile(g)
    for s in range(g.n + 1):
        best = min(len(set().union(*[g.neighbors(v) for v in c]) - set(c)) if c else 0
                   for c in combinations(range(g.n), s))
        assert prof[s][0] == best


def test_invariants_record():
    d = graph_invariants(cycle(5)).to_dict()
    assert d["omega"] == 2 and d["alpha"] == 2 and d["chi"] == 3 and d["diam"] == 2
    assert d["chi_complement"] == 3 and d["mim"] == 1 and d["lip"] == 3
    assert graph_invariants(complement(cycle(5))).omega == 2
