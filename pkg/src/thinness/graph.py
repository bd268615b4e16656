"""Finite simple undirected graphs on the vertex set 0..n-1.

Adjacency is stored as one integer bitmask per vertex, which keeps the
exhaustive searches elsewhere in the package cheap.  Graphs are immutable.
"""

from __future__ import annotations

import json
import re
from typing import Iterable, Iterator, Sequence

from .errors import ParameterError


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class Graph:
    """An immutable simple graph.

    >>> g = Graph(3, [(0, 1), (1, 2)])
    >>> g.edges()
    [(0, 1), (1, 2)]
    """

    __slots__ = ("n", "_masks", "_hash")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if not isinstance(n, int) or n < 0:
            raise ParameterError(f"vertex count must be a nonnegative integer, got {n!r}")
        masks = [0] * n
        for e in edges:
            if len(e) != 2:
                raise ParameterError(f"edge {e!r} does not have two endpoints")
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge {(u, v)} has an endpoint outside [0, {n})")
            if u == v:
                raise ParameterError(f"loop at vertex {u}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        self.n = n
        self._masks = tuple(masks)
        self._hash = None

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> "Graph":
        n = len(masks)
        full = (1 << n) - 1
        for v, m in enumerate(masks):
            if m & ~full:
                raise ParameterError(f"neighbor of {v} outside [0, {n})")
            if m >> v & 1:
                raise ParameterError(f"loop at vertex {v}")
            for u in bits(m):
                if not masks[u] >> v & 1:
                    raise ParameterError(f"adjacency not symmetric between {u} and {v}")
        g = cls.__new__(cls)
        g.n = n
        g._masks = tuple(masks)
        g._hash = None
        return g

    # -- queries -----------------------------------------------------------

    @property
    def masks(self) -> tuple[int, ...]:
        return self._masks

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(bits(m)) for m in self._masks)

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(bits(self._masks[v]))

    def closed_neighbors(self, v: int) -> frozenset[int]:
        return self.neighbors(v) | {v}

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._masks[u] >> v & 1)

    def degree(self, v: int) -> int:
        return popcount(self._masks[v])

    def degrees(self) -> list[int]:
        return [popcount(m) for m in self._masks]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self._masks[u] >> (u + 1) << (u + 1))]

    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def is_complete(self) -> bool:
        return all(m == self.all_mask ^ (1 << v) for v, m in enumerate(self._masks))

    def is_edgeless(self) -> bool:
        return not any(self._masks)

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = frontier = 1 << s
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= self._masks[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(list(bits(comp)))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._masks == other._masks

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self._masks))
        return self._hash

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges()]}

    @classmethod
    def from_dict(cls, data: dict) -> "Graph":
        try:
            return cls(data["n"], data["edges"])
        except (KeyError, TypeError) as exc:
            raise ParameterError(f"malformed graph record: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        return cls.from_dict(json.loads(text))

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        lines += [f"  {v};" for v in range(self.n)]
        lines += [f"  {u} -- {v};" for u, v in self.edges()]
        lines.append("}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dot(cls, text: str) -> "Graph":
        body = re.search(r"\{(.*)\}", text, re.S)
        if body is None:
            raise ParameterError("not a DOT graph: missing braces")
        nodes, edges = set(), []
        for stmt in body.group(1).split(";"):
            stmt = stmt.strip()
            if not stmt:
                continue
            m = re.fullmatch(r"(\d+)\s*--\s*(\d+)", stmt)
            if m:
                edges.append((int(m.group(1)), int(m.group(2))))
                nodes.update(edges[-1])
            elif re.fullmatch(r"\d+", stmt):
                nodes.add(int(stmt))
            else:
                raise ParameterError(f"unsupported DOT statement: {stmt!r}")
        n = max(nodes) + 1 if nodes else 0
        return cls(n, edges)


def complement(g: Graph) -> Graph:
    full = g.all_mask
    return Graph.from_masks([full & ~m & ~(1 << v) for v, m in enumerate(g.masks)])


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced by ``vertices``, relabeled 0..|W|-1 in increasing original order."""
    keep = sorted(set(vertices))
    for v in keep:
        if not 0 <= v < g.n:
            raise ParameterError(f"vertex {v} outside [0, {g.n})")
    index = {v: i for i, v in enumerate(keep)}
    masks = []
    for v in keep:
        masks.append(sum(1 << index[u] for u in bits(g.masks[v]) if u in index))
    return Graph.from_masks(masks)


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed to ``perm[v]``."""
    if sorted(perm) != list(range(g.n)):
        raise ParameterError("relabeling is not a permutation")
    return Graph(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
