from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import graphs
from thinness.canon import canonical_form, canonical_key, isomorphic, orbit_representatives, orbits
from thinness.corpus import graphs_on, graphs_up_to, random_corpus
from thinness.families import claw, cycle, grid, path
from thinness.graph import Graph, relabel


@given(graphs(max_n=9), st.randoms(use_true_random=False))
def test_key_is_isomorphism_invariant(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = relabel(g, perm)
    assert canonical_key(g) == canonical_key(h)
    assert canonical_form(g) == canonical_form(h)
    assert isomorphic(g, h)


def test_key_examples():
    assert canonical_key(cycle(4)) == canonical_key(Graph(4, [(0, 2), (2, 1), (1, 3), (3, 0)]))
    assert canonical_key(path(4)) != canonical_key(claw())
    assert canonical_key(path(4)) == "c4:" + canonical_key(path(4)).split(":", 1)[1]


def test_large_keys_keep_edge_list():
    g = grid(4)
    k = canonical_key(g)
    assert k.startswith("f16:") and k.endswith(";".join(f"{u}-{v}" for u, v in g.edges()))
    swap = [1, 0] + list(range(2, 16))  # not an automorphism of the grid
    assert canonical_key(relabel(g, swap)) != k


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156)])
def test_class_counts_match_the_atlas(n, count):
    atlas = [h for h in nx.graph_atlas_g() if h.number_of_nodes() == n]
    assert len(atlas) == count
    assert len(graphs_on(n)) == count


def test_small_corpus_size():
    assert len(graphs_up_to(4)) == 18


@given(graphs(max_n=7))
def test_orbits_partition_vertices(g):
    orb = orbits(g)
    assert sorted(v for o in orb for v in o) == list(range(g.n))
    reps = orbit_representatives(g)
    assert len(reps) == len(orb)
    # vertices of one orbit look alike under individualization
    for o in orb:
        keys = {canonical_key_with(g, v) for v in o}
        assert len(keys) == 1


def canonical_key_with(g: Graph, v: int) -> tuple:
    from thinness.canon import canonical_labeling
    return canonical_labeling(g, [1 if u == v else 0 for u in range(g.n)])[0]


def test_random_corpus_is_seeded():
    a = random_corpus(5, 6, seed=3)
    b = random_corpus(5, 6, seed=3)
    assert a == b and all(g.n == 6 for g in a)
