"""Canonical labeling by color refinement plus individualization.

The search tree explores every individualization of the first smallest
non-singleton cell, skipping vertices that are twins of an already explored
one (twins are swapped by an automorphism, so their subtrees give the same
certificates).  The minimum certificate over all leaves is the canonical
form, which makes it exact; the cost is exponential only for graphs with
large automorphism groups that are not twin-generated.
"""

from __future__ import annotations

import hashlib
from typing import Optional, Sequence

from .graph import Graph, bits

EXACT_KEY_LIMIT = 10


class BudgetExceeded(Exception):
    pass


def refine(masks: Sequence[int], colors: Sequence[int]) -> list[int]:
    """Coarsest equitable refinement of ``colors``; new colors are ranks of signatures."""
    colors = list(colors)
    n = len(masks)
    num = len(set(colors))
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[u] for u in bits(masks[v]))))
            for v in range(n)
        ]
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [ranking[s] for s in sigs]
        if len(ranking) == num:
            return colors
        num = len(ranking)


def _normalize(colors: Sequence[int]) -> list[int]:
    ranking = {c: i for i, c in enumerate(sorted(set(colors)))}
    return [ranking[c] for c in colors]


def _certificate(masks: Sequence[int], colors: Sequence[int]) -> tuple:
    # colors is discrete: colors[v] is v's new label
    n = len(masks)
    inv = [0] * n
    for v, c in enumerate(colors):
        inv[c] = v
    rows = []
    for i in range(n):
        row = 0
        for u in bits(masks[inv[i]]):
            row |= 1 << colors[u]
        rows.append(row)
    return tuple(rows)


def _twins(masks: Sequence[int], u: int, v: int) -> bool:
    strip = ~((1 << u) | (1 << v))
    return masks[u] & strip == masks[v] & strip


def canonical_labeling(
    g: Graph, colors: Optional[Sequence[int]] = None, budget: Optional[int] = None
) -> tuple[tuple, list[int]]:
    """(certificate, labeling) where labeling[v] is v's canonical label.

    ``colors`` gives an initial vertex coloring that isomorphisms must respect.
    ``budget`` caps the number of search nodes; exceeding it raises BudgetExceeded.
    """
    masks = g.masks
    n = g.n
    start = refine(masks, _normalize(colors) if colors is not None else [0] * n)
    best: list = [None, None]
    nodes = [0]

    def search(col: list[int]) -> None:
        nodes[0] += 1
        if budget is not None and nodes[0] > budget:
            raise BudgetExceeded
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(col):
            cells.setdefault(c, []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1 and (target is None or len(cells[c]) < len(cells[target])):
                target = c
        if target is None:
            cert = _certificate(masks, col)
            if best[0] is None or cert < best[0]:
                best[0], best[1] = cert, list(col)
            return
        tried: list[int] = []
        for v in cells[target]:
            if any(_twins(masks, v, w) for w in tried):
                continue
            tried.append(v)
            split = [2 * c + (0 if u == v or c != target else 1) for u, c in enumerate(col)]
            search(refine(masks, _normalize(split)))

    search(start)
    if colors is not None:
        # labels respect the initial color order, so the class sizes pin the coloring
        init = _normalize(colors)
        hist = tuple(init.count(c) for c in range(max(init, default=-1) + 1))
        return (hist, best[0]), best[1]
    return best[0], best[1]


def canonical_form(g: Graph) -> Graph:
    _, lab = canonical_labeling(g)
    return Graph(g.n, [(lab[u], lab[v]) for u, v in g.edges()])


def isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.num_edges() != h.num_edges():
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_labeling(g)[0] == canonical_labeling(h)[0]


def orbits(g: Graph, budget: Optional[int] = None) -> list[list[int]]:
    """Automorphism orbits, each sorted, ordered by smallest member."""
    base = refine(g.masks, [0] * g.n)
    certs: dict[int, tuple] = {}
    for v in range(g.n):
        col = [2 * c + 1 for c in base]
        col[v] = 2 * base[v]
        certs[v] = canonical_labeling(g, col, budget)[0]
    groups: dict[tuple, list[int]] = {}
    for v in range(g.n):
        # the individualized cell color is part of the identity too
        groups.setdefault((base[v], certs[v]), []).append(v)
    return sorted(groups.values())


def orbit_representatives(g: Graph, budget: Optional[int] = 20000) -> list[int]:
    """One vertex per orbit, or all vertices when the search budget runs out."""
    try:
        return [o[0] for o in orbits(g, budget)]
    except BudgetExceeded:
        return list(range(g.n))


def canonical_key(g: Graph) -> str:
    """Isomorphism-invariant key, exact for n <= 10.

    Larger graphs get a refinement fingerprint followed by the labeled edge
    list, so distinct labeled graphs never collide.
    """
    if g.n <= EXACT_KEY_LIMIT:
        cert, _ = canonical_labeling(g)
        return f"c{g.n}:" + ",".join(format(r, "x") for r in cert)
    colors = refine(g.masks, [0] * g.n)
    sig = sorted((colors[v], g.degree(v)) for v in range(g.n))
    fp = hashlib.sha256(repr(sig).encode()).hexdigest()[:16]
    edges = ";".join(f"{u}-{v}" for u, v in g.edges())
    return f"f{g.n}:{fp}:{edges}"
