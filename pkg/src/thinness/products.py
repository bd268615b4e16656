"""Binary graph operations.

Labeling: in the nine vertex-set products the pair (i, j) with i in V(G1)
and j in V(G2) is vertex ``i * n2 + j``.  Union and join put V(G1) first and
V(G2) after it.  ``lex_vertex`` splices V(G2) in at the position of the
substituted vertex v: vertices u < v keep their label, V(G2) occupies
v .. v + n2 - 1 and vertices u > v move to u - 1 + n2.

"Nonadjacent" in the modular, homomorphic and hom definitions includes
equal coordinates, which is what makes the identities G o K1 = complement(G)
and G1 o G2 = complement(G1 |x G2) hold.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .errors import ParameterError
from .families import boxminus_graph
from .graph import Graph

PRODUCT_KINDS = (
    "union", "join", "lex_vertex", "lex", "cartesian", "direct", "strong",
    "conormal", "modular", "homomorphic", "hom",
)
PAIR_KINDS = PRODUCT_KINDS[3:]
SYMBOLS = {
    "union": "∪", "join": "∨", "lex_vertex": "•v", "lex": "•", "cartesian": "□",
    "direct": "×", "strong": "⊠", "conormal": "∗", "modular": "◇",
    "homomorphic": "⋉", "hom": "∘",
}


@dataclass(frozen=True)
class ProductKind:
    kind: str
    vertex: Optional[int] = None  # substituted vertex for lex_vertex

    def __post_init__(self):
        if self.kind not in PRODUCT_KINDS:
            raise ParameterError(f"unknown product {self.kind!r}; expected one of {PRODUCT_KINDS}")
        if self.kind == "lex_vertex" and self.vertex is None:
            raise ParameterError("lex_vertex needs the substituted vertex")

    def __str__(self) -> str:
        return f"lex_vertex[{self.vertex}]" if self.kind == "lex_vertex" else self.kind


# adjacency rules on coordinates: a = u1~v1, e1 = (u1 == v1), b = u2~v2, e2 = (u2 == v2)
_RULES: dict[str, Callable[[bool, bool, bool, bool], bool]] = {
    "lex": lambda a, e1, b, e2: a or (e1 and b),
    "cartesian": lambda a, e1, b, e2: (e1 and b) or (e2 and a),
    "direct": lambda a, e1, b, e2: a and b,
    "strong": lambda a, e1, b, e2: (e1 and b) or (e2 and a) or (a and b),
    "conormal": lambda a, e1, b, e2: a or b,
    "modular": lambda a, e1, b, e2: (a and b) or (not a and not b),
    "homomorphic": lambda a, e1, b, e2: e1 or (a and not b),
    "hom": lambda a, e1, b, e2: not e1 and (not a or b),
}


def pair_index(i: int, j: int, n2: int) -> int:
    return i * n2 + j


def _pair_product(rule, g1: Graph, g2: Graph) -> Graph:
    n1, n2 = g1.n, g2.n
    edges = []
    for u1 in range(n1):
        for v1 in range(u1, n1):
            a, e1 = g1.has_edge(u1, v1), u1 == v1
            for u2 in range(n2):
                for v2 in range(n2):
                    if e1 and v2 <= u2:
                        continue
                    if rule(a, e1, g2.has_edge(u2, v2), u2 == v2):
                        edges.append((u1 * n2 + u2, v1 * n2 + v2))
    return Graph(n1 * n2, edges)


def union(g1: Graph, g2: Graph) -> Graph:
    n = g1.n
    return Graph(n + g2.n, g1.edges() + [(u + n, v + n) for u, v in g2.edges()])


def join(g1: Graph, g2: Graph) -> Graph:
    n = g1.n
    cross = [(u, n + w) for u in range(n) for w in range(g2.n)]
    return Graph(n + g2.n, g1.edges() + [(u + n, v + n) for u, v in g2.edges()] + cross)


def lex_vertex_map(n1: int, n2: int, v: int) -> list[int]:
    """New label of each vertex of G1 other than v (v maps to -1)."""
    return [u if u < v else (-1 if u == v else u - 1 + n2) for u in range(n1)]


def lex_vertex(g1: Graph, g2: Graph, v: int) -> Graph:
    """G1 with vertex v replaced by a copy of G2 that inherits v's neighbors."""
    if not 0 <= v < g1.n:
        raise ParameterError(f"substituted vertex {v} outside [0, {g1.n})")
    n2 = g2.n
    new = lex_vertex_map(g1.n, n2, v)
    edges = [(new[a], new[b]) for a, b in g1.edges() if v not in (a, b)]
    edges += [(v + a, v + b) for a, b in g2.edges()]
    edges += [(new[u], v + w) for u in g1.neighbors(v) for w in range(n2)]
    return Graph(g1.n - 1 + n2, edges)


def apply_product(kind, g1: Graph, g2: Graph) -> Graph:
    if isinstance(kind, str):
        kind = ProductKind(kind)
    if kind.kind == "union":
        return union(g1, g2)
    if kind.kind == "join":
        return join(g1, g2)
    if kind.kind == "lex_vertex":
        return lex_vertex(g1, g2, kind.vertex)
    return _pair_product(_RULES[kind.kind], g1, g2)


def lex(g1: Graph, g2: Graph) -> Graph:
    return apply_product("lex", g1, g2)


def cartesian(g1: Graph, g2: Graph) -> Graph:
    return apply_product("cartesian", g1, g2)


def direct(g1: Graph, g2: Graph) -> Graph:
    return apply_product("direct", g1, g2)


def strong(g1: Graph, g2: Graph) -> Graph:
    return apply_product("strong", g1, g2)


def conormal(g1: Graph, g2: Graph) -> Graph:
    return apply_product("conormal", g1, g2)


def modular(g1: Graph, g2: Graph) -> Graph:
    return apply_product("modular", g1, g2)


def homomorphic(g1: Graph, g2: Graph) -> Graph:
    return apply_product("homomorphic", g1, g2)


def hom(g1: Graph, g2: Graph) -> Graph:
    return apply_product("hom", g1, g2)


def boxminus(g1: Graph, g2: Graph, f: Optional[Sequence[int]] = None) -> Graph:
    return boxminus_graph(g1, g2, f)
