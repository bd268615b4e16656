from __future__ import annotations

from hypothesis import strategies as st

from thinness.graph import Graph


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 6) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [p for p, keep in zip(pairs, mask) if keep])


@st.composite
def relabelings(draw, g: Graph) -> list[int]:
    return draw(st.permutations(list(range(g.n))))
