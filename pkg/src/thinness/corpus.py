"""Graph corpora: every isomorphism class up to a size, and seeded random graphs."""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Optional

from .canon import canonical_form, canonical_key
from .errors import SizeError
from .graph import Graph

ENUMERATION_CAP = 6


@lru_cache(maxsize=None)
def graphs_on(n: int) -> tuple[Graph, ...]:
    """One canonical representative per isomorphism class on exactly n vertices."""
    if n > ENUMERATION_CAP:
        raise SizeError(f"exhaustive enumeration is capped at {ENUMERATION_CAP} vertices")
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    seen: dict[str, Graph] = {}
    for mask in range(1 << len(pairs)):
        g = Graph(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])
        key = canonical_key(g)
        if key not in seen:
            seen[key] = canonical_form(g)
    return tuple(sorted(seen.values(), key=lambda g: (g.num_edges(), g.edges())))


def graphs_up_to(n: int, minimum: int = 1) -> list[Graph]:
    out: list[Graph] = []
    for k in range(minimum, n + 1):
        out.extend(graphs_on(k))
    return out


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_corpus(count: int, n: int, seed: int = 0, p: Optional[float] = None) -> list[Graph]:
    """``count`` graphs on n vertices; edge density is drawn per graph unless ``p`` is given."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        q = p if p is not None else rng.uniform(0.2, 0.8)
        out.append(random_graph(n, q, rng))
    return out
