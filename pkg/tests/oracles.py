"""Reference implementations that share no code with the package.

Everything here follows the definitions literally and is only fast enough
for graphs of five or six vertices.
"""

from __future__ import annotations

from itertools import combinations, permutations, product

import networkx as nx

from thinness.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    nodes = sorted(h.nodes())
    idx = {v: i for i, v in enumerate(nodes)}
    return Graph(len(nodes), [(idx[u], idx[v]) for u, v in h.edges()])


def same_graph(g: Graph, h: nx.Graph) -> bool:
    return nx.is_isomorphic(to_nx(g), h)


def consistent(g: Graph, order, classes, proper=False, constraint="none") -> bool:
    """Literal check of the three-vertex rule, and its mirror image when proper."""
    adj = lambda a, b: g.has_edge(a, b)  # noqa: E731
    n = len(order)
    for i in range(n):
        for j in range(i + 1, n):
            r, s = order[i], order[j]
            if classes[r] == classes[s]:
                if constraint == "independent" and adj(r, s):
                    return False
                if constraint == "complete" and not adj(r, s):
                    return False
            for k in range(j + 1, n):
                t = order[k]
                if classes[r] == classes[s] and adj(t, r) and not adj(t, s):
                    return False
                if proper and classes[s] == classes[t] and adj(r, t) and not adj(r, s):
                    return False
    return True


def _labelings(n: int, k: int):
    for labels in product(range(k), repeat=n):
        if len(set(labels)) == k and all(labels[i] <= max(labels[:i], default=-1) + 1 for i in range(n)):
            yield labels


def reference_thinness(g: Graph, proper=False, constraint="none") -> int:
    """Smallest k with some ordering and k-class partition passing ``consistent``."""
    n = g.n
    if n == 0:
        return 0
    orders = list(permutations(range(n)))
    for k in range(1, n + 1):
        for labels in _labelings(n, k):
            if any(consistent(g, o, labels, proper, constraint) for o in orders):
                return k
    raise AssertionError("singletons are always consistent")


def chromatic_number(h: nx.Graph) -> int:
    nodes = list(h.nodes())
    if not nodes:
        return 0
    for k in range(1, len(nodes) + 1):
        for cols in product(range(k), repeat=len(nodes)):
            c = dict(zip(nodes, cols))
            if all(c[u] != c[v] for u, v in h.edges()):
                return k
    raise AssertionError


def max_induced_matching(g: Graph) -> int:
    edges = g.edges()
    best = 0
    for size in range(1, len(edges) + 1):
        found = False
        for combo in combinations(edges, size):
            verts = [v for e in combo for v in e]
            if len(set(verts)) < 2 * size:
                continue
            induced = [(u, v) for u, v in combinations(verts, 2) if g.has_edge(u, v)]
            if len(induced) == size:
                found = True
                break
        if not found:
            break
        best = size
    return best


def is_transitively_orientable(g: Graph) -> bool:
    edges = g.edges()
    for bits in product((0, 1), repeat=len(edges)):
        arcs = {(u, v) if b else (v, u) for (u, v), b in zip(edges, bits)}
        if all((a, c) in arcs for a, b in arcs for b2, c in arcs if b == b2 and a != c):
            return True
    return False


def is_interval_by_definition(g: Graph) -> bool:
    """Interval graphs are chordal with no asteroidal triple."""
    h = to_nx(g)
    if not nx.is_chordal(h):
        return False
    for a, b, c in combinations(h.nodes(), 3):
        if _avoids(h, a, b, c) and _avoids(h, b, c, a) and _avoids(h, a, c, b):
            return False
    return True


def _avoids(h: nx.Graph, a, b, c) -> bool:
    """A path from a to b missing the closed neighborhood of c."""
    blocked = set(h[c]) | {c}
    if a in blocked or b in blocked:
        return False
    sub = h.subgraph(v for v in h.nodes() if v not in blocked)
    return nx.has_path(sub, a, b)
