"""Generators for the named graph families.

Labeling conventions (fixed so cached results and witnesses are reproducible):

* ``matching`` t: pairs (2i, 2i+1) are the edges.
* ``complement_matching`` t: pairs (2i, 2i+1) are the only non-edges.
* ``complete_bipartite`` (m, n): sides 0..m-1 and m..m+n-1.
* ``crown`` n: K_{n,n} with sides 0..n-1, n..2n-1, matched pairs (i, n+i) removed.
* ``grid`` r: cell (i, j) is vertex i*r + j (row-major).
* ``hypercube`` n: vertex x is the binary string of x; neighbors differ in one bit.
* ``claw``: leaves 0, 1, 2 and center 3 (3K_1 joined with K_1).
* ``boxminus``: V(G1) first, then V(G2) shifted by n; edges v -- n + f(v).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping, Optional, Sequence

from .errors import ParameterError
from .graph import Graph, complement

FAMILY_NAMES = (
    "complete", "empty", "path", "cycle", "complete_bipartite", "matching",
    "complement_matching", "crown", "grid", "hypercube", "claw", "boxminus",
)


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.name not in FAMILY_NAMES:
            raise ParameterError(f"unknown family {self.name!r}; expected one of {FAMILY_NAMES}")

    def label(self) -> str:
        if self.name == "boxminus":
            return "boxminus"
        args = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.name}({args})" if args else self.name


def _int_param(params: Mapping[str, Any], key: str, minimum: int) -> int:
    if key not in params:
        raise ParameterError(f"missing parameter {key!r}")
    value = params[key]
    if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
        raise ParameterError(f"parameter {key} must be an integer >= {minimum}, got {value!r}")
    return value


def complete(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def empty(n: int) -> Graph:
    return Graph(n)


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(m: int, n: int) -> Graph:
    return Graph(m + n, [(u, m + v) for u in range(m) for v in range(n)])


def matching(t: int) -> Graph:
    return Graph(2 * t, [(2 * i, 2 * i + 1) for i in range(t)])


def complement_matching(t: int) -> Graph:
    return complement(matching(t))


def crown(n: int) -> Graph:
    return Graph(2 * n, [(i, n + j) for i in range(n) for j in range(n) if i != j])


def grid(r: int) -> Graph:
    edges = []
    for i in range(r):
        for j in range(r):
            if j + 1 < r:
                edges.append((i * r + j, i * r + j + 1))
            if i + 1 < r:
                edges.append((i * r + j, (i + 1) * r + j))
    return Graph(r * r, edges)


def hypercube(n: int) -> Graph:
    size = 1 << n
    return Graph(size, [(x, x ^ (1 << b)) for x in range(size) for b in range(n) if x < x ^ (1 << b)])


def claw() -> Graph:
    return Graph(4, [(0, 3), (1, 3), (2, 3)])


def boxminus_graph(g1: Graph, g2: Graph, f: Optional[Sequence[int]] = None) -> Graph:
    """Disjoint G1, G2 plus the perfect matching v -- f(v)."""
    n = g1.n
    if g2.n != n:
        raise ParameterError(f"boxminus needs equal orders, got {g1.n} and {g2.n}")
    f = list(range(n)) if f is None else list(f)
    if sorted(f) != list(range(n)):
        raise ParameterError("boxminus bijection must be a permutation of [0, n)")
    edges = list(g1.edges())
    edges += [(u + n, v + n) for u, v in g2.edges()]
    edges += [(v, n + f[v]) for v in range(n)]
    return Graph(2 * n, edges)


def make_family(spec: FamilySpec) -> Graph:
    p = spec.params
    name = spec.name
    if name == "complete":
        return complete(_int_param(p, "n", 1))
    if name == "empty":
        return empty(_int_param(p, "n", 1))
    if name == "path":
        return path(_int_param(p, "n", 1))
    if name == "cycle":
        return cycle(_int_param(p, "n", 3))
    if name == "complete_bipartite":
        n = _int_param(p, "n", 1)
        m = _int_param(p, "m", 1) if "m" in p else n
        return complete_bipartite(m, n)
    if name == "matching":
        return matching(_int_param(p, "t", 1))
    if name == "complement_matching":
        return complement_matching(_int_param(p, "t", 1))
    if name == "crown":
        return crown(_int_param(p, "n", 1))
    if name == "grid":
        return grid(_int_param(p, "r", 1))
    if name == "hypercube":
        return hypercube(_int_param(p, "n", 1))
    if name == "claw":
        return claw()
    # boxminus
    g1, g2 = p.get("g1"), p.get("g2")
    if not isinstance(g1, Graph) or not isinstance(g2, Graph):
        raise ParameterError("boxminus needs component graphs g1 and g2")
    return boxminus_graph(g1, g2, p.get("f"))


def family(name: str, **params) -> Graph:
    """Shorthand for ``make_family(FamilySpec(name, params))``."""
    return make_family(FamilySpec(name, params))
