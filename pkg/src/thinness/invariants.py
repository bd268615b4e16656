"""Exact graph invariants by exhaustive search over bitmasks.

Every routine here is exponential in the worst case and intended for the
desk-scale instances the rest of the package works with.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from itertools import combinations
from typing import Optional, Sequence

from .errors import DomainError, SizeError
from .graph import Graph, bits, complement, popcount

DEFAULT_EXACT_CAP = 16


def _check_cap(g: Graph, cap: Optional[int]) -> None:
    if cap is not None and g.n > cap:
        raise SizeError(f"graph has {g.n} vertices, exact cap is {cap}")


# -- cliques -----------------------------------------------------------------

def max_clique_mask(masks: Sequence[int], candidates: Optional[int] = None) -> int:
    """Bitmask of a maximum clique of the graph given by ``masks``."""
    if candidates is None:
        candidates = (1 << len(masks)) - 1
    best = [0, 0]  # size, mask

    def expand(clique: int, size: int, cand: int) -> None:
        if not cand:
            if size > best[0]:
                best[0], best[1] = size, clique
            return
        # greedy coloring bound
        colors, rest = 0, cand
        while rest:
            colors += 1
            avail = rest
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= ~masks[v] & ~(1 << v)
                rest &= ~(1 << v)
        if size + colors <= best[0]:
            return
        while cand:
            if size + popcount(cand) <= best[0]:
                return
            v = (cand & -cand).bit_length() - 1
            expand(clique | 1 << v, size + 1, cand & masks[v])
            cand &= ~(1 << v)

    expand(0, 0, candidates)
    return best[1]


def clique_number(g: Graph) -> int:
    return popcount(max_clique_mask(g.masks))


def independence_number(g: Graph) -> int:
    return clique_number(complement(g))


def maximal_cliques(g: Graph) -> list[int]:
    """All maximal cliques as bitmasks (Bron-Kerbosch with pivoting)."""
    out: list[int] = []
    masks = g.masks

    def bk(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(r)
            return
        pivot_src = p | x
        pivot = max(bits(pivot_src), key=lambda u: popcount(p & masks[u]))
        for v in bits(p & ~masks[pivot]):
            bk(r | 1 << v, p & masks[v], x & masks[v])
            p &= ~(1 << v)
            x |= 1 << v

    if g.n:
        bk(0, g.all_mask, 0)
    return sorted(out)


# -- coloring ----------------------------------------------------------------

def chromatic_coloring(masks: Sequence[int]) -> tuple[int, list[int]]:
    """Exact chromatic number and an optimal coloring (DSATUR branch and bound).

    The search stops as soon as it finds a coloring whose size matches the
    size of a clique it has located, so perfect graphs terminate quickly.
    """
    n = len(masks)
    if n == 0:
        return 0, []
    clique = max_clique_mask(masks)
    lower = popcount(clique)
    # seed with a greedy DSATUR coloring
    best_colors = _dsatur_greedy(masks)
    best_k = max(best_colors) + 1
    if best_k == lower:
        return best_k, best_colors

    colors = [-1] * n
    # pre-color the clique, which removes color symmetry for those vertices
    for c, v in enumerate(bits(clique)):
        colors[v] = c
    state = {"k": best_k, "sol": best_colors}

    def solve(used: int, uncolored: int) -> bool:
        if used >= state["k"]:
            return False
        if uncolored == 0:
            state["k"], state["sol"] = used, colors.copy()
            return state["k"] == lower
        best_v, best_sat, best_deg = -1, -1, -1
        for v in range(n):
            if colors[v] >= 0:
                continue
            sat = len({colors[u] for u in bits(masks[v]) if colors[u] >= 0})
            deg = popcount(masks[v])
            if sat > best_sat or (sat == best_sat and deg > best_deg):
                best_v, best_sat, best_deg = v, sat, deg
        v = best_v
        forbidden = {colors[u] for u in bits(masks[v]) if colors[u] >= 0}
        for c in range(min(used + 1, state["k"] - 1)):
            if c in forbidden:
                continue
            colors[v] = c
            if solve(max(used, c + 1), uncolored - 1):
                return True
        colors[v] = -1
        return False

    solve(lower, n - lower)
    return state["k"], state["sol"]


def _dsatur_greedy(masks: Sequence[int]) -> list[int]:
    n = len(masks)
    colors = [-1] * n
    for _ in range(n):
        best_v, best_key = -1, None
        for v in range(n):
            if colors[v] >= 0:
                continue
            key = (len({colors[u] for u in bits(masks[v]) if colors[u] >= 0}), popcount(masks[v]), -v)
            if best_key is None or key > best_key:
                best_v, best_key = v, key
        forbidden = {colors[u] for u in bits(masks[best_v]) if colors[u] >= 0}
        c = 0
        while c in forbidden:
            c += 1
        colors[best_v] = c
    return colors


def chromatic_number(g: Graph) -> int:
    return chromatic_coloring(g.masks)[0]


# -- induced structures ------------------------------------------------------

def max_induced_matching(g: Graph) -> list[tuple[int, int]]:
    edges = g.edges()
    masks = g.masks
    best: list = [[]]

    def closed(e):
        u, v = e
        return masks[u] | masks[v] | 1 << u | 1 << v

    def search(chosen: list, cand: list) -> None:
        if len(chosen) + len(cand) <= len(best[0]):
            return
        if not cand:
            best[0] = list(chosen)
            return
        e, rest = cand[0], cand[1:]
        block = closed(e)
        chosen.append(e)
        search(chosen, [f for f in rest if not (block >> f[0] & 1 or block >> f[1] & 1)])
        chosen.pop()
        search(chosen, rest)

    search([], edges)
    return best[0]


def longest_induced_path(g: Graph) -> list[int]:
    """Vertices of a longest induced path (maximum over all components)."""
    masks = g.masks
    best: list = [[0] if g.n else []]

    def extend(path: list[int], inside: int, blocked: int) -> None:
        if len(path) > len(best[0]):
            best[0] = list(path)
        last = path[-1]
        for w in bits(masks[last] & ~blocked):
            # w may touch only the last path vertex
            if masks[w] & inside & ~(1 << last):
                continue
            path.append(w)
            extend(path, inside | 1 << w, blocked | 1 << w | masks[last])
            path.pop()

    for s in range(g.n):
        extend([s], 1 << s, 1 << s)
    return best[0]


def eccentricities(g: Graph) -> list[int]:
    if not g.is_connected():
        raise DomainError("eccentricity is undefined on a disconnected graph")
    out = []
    for s in range(g.n):
        seen = frontier = 1 << s
        dist = 0
        while True:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.masks[v]
            frontier = nxt & ~seen
            if not frontier:
                break
            seen |= frontier
            dist += 1
        out.append(dist)
    return out


def diameter(g: Graph) -> int:
    if g.n == 0:
        raise DomainError("diameter of the empty graph is undefined")
    return max(eccentricities(g))


def min_private_neighbors(g: Graph) -> tuple[int, tuple[int, int]]:
    """Minimum over ordered pairs u != v of |N(u) minus N[v]|, with a minimizing pair."""
    best = None
    pair = (0, 0)
    for u in range(g.n):
        for v in range(g.n):
            if u == v:
                continue
            k = popcount(g.masks[u] & ~g.masks[v] & ~(1 << v))
            if best is None or k < best:
                best, pair = k, (u, v)
    if best is None:
        raise DomainError("needs at least two vertices")
    return best, pair


def vertex_cover_number(g: Graph) -> int:
    return g.n - independence_number(g)


# -- vertex isoperimetry -----------------------------------------------------

def vertex_isoperimetric_profile(g: Graph, cap: Optional[int] = 12) -> list[tuple[int, int]]:
    """For each size s in 0..n, the minimum boundary size and a set attaining it."""
    _check_cap(g, cap)
    n = g.n
    best = [(n + 1, 0)] * (n + 1)
    masks = g.masks
    for x in range(1 << n):
        nb = 0
        for v in bits(x):
            nb |= masks[v]
        b = popcount(nb & ~x)
        s = popcount(x)
        if b < best[s][0]:
            best[s] = (b, x)
    return best


def isoperimetric_peak(g: Graph, cap: Optional[int] = 12) -> tuple[int, int, int]:
    """(peak value, size attaining it, a minimum-boundary set of that size)."""
    profile = vertex_isoperimetric_profile(g, cap)
    s = max(range(len(profile)), key=lambda i: (profile[i][0], -i))
    return profile[s][0], s, profile[s][1]


# -- interval and comparability structure ------------------------------------

def clique_path(g: Graph) -> Optional[list[int]]:
    """An ordering of the maximal cliques in which every vertex's cliques are
    consecutive, or None when the graph is not an interval graph."""
    cliques = maximal_cliques(g)
    m = len(cliques)
    if m == 0:
        return []
    order: list[int] = []
    dead: set[tuple[int, int]] = set()

    # a vertex closes once a clique without it follows one with it
    def place(used: int, closed: int) -> bool:
        if used == (1 << m) - 1:
            return True
        last = order[-1] if order else -1
        if (used, last) in dead:
            return False
        prev = cliques[last] if order else 0
        for i in range(m):
            if used >> i & 1 or cliques[i] & closed:
                continue
            order.append(i)
            if place(used | 1 << i, closed | (prev & ~cliques[i])):
                return True
            order.pop()
        dead.add((used, last))
        return False

    return [cliques[i] for i in order] if place(0, 0) else None


def is_interval(g: Graph) -> bool:
    return clique_path(g) is not None


def interval_order(g: Graph) -> Optional[list[int]]:
    """A vertex ordering consistent with a single class, via the clique path.

    Vertices are sorted by the index of the last clique containing them.
    """
    path = clique_path(g)
    if path is None:
        return None
    last = {}
    first = {}
    for i, c in enumerate(path):
        for v in bits(c):
            last[v] = i
            first.setdefault(v, i)
    return sorted(range(g.n), key=lambda v: (last[v], first[v], v))


def comparability_ordering(g: Graph) -> Optional[list[int]]:
    """An ordering with r < s < t, rs and st edges implying rt an edge; None if absent."""
    n = g.n
    masks = g.masks
    order: list[int] = []
    pred_adj = [0] * n  # neighbors of v placed before v

    def extend(placed: int) -> bool:
        if len(order) == n:
            return True
        for t in range(n):
            if placed >> t & 1:
                continue
            ok = True
            for s in bits(placed & masks[t]):
                if pred_adj[s] & ~masks[t]:
                    ok = False
                    break
            if not ok:
                continue
            pred_adj[t] = placed & masks[t]
            order.append(t)
            if extend(placed | 1 << t):
                return True
            order.pop()
        return False

    return list(order) if extend(0) else None


def is_comparability_ordering(g: Graph, order: Sequence[int]) -> bool:
    pos = {v: i for i, v in enumerate(order)}
    for u, v in g.edges():
        for w in g.neighbors(v):
            if w == u:
                continue
            a, b, c = sorted((u, v, w), key=pos.__getitem__)
            if b == v and not g.has_edge(a, c):
                return False
    return True


# -- summary record ----------------------------------------------------------

@dataclass(frozen=True)
class Invariants:
    alpha: int
    omega: int
    chi: int
    chi_complement: int
    tau: int
    mim: int
    lip: int
    diam: Optional[int]
    max_degree: int
    min_degree: int

    def to_dict(self) -> dict:
        return asdict(self)


def graph_invariants(g: Graph, cap: Optional[int] = DEFAULT_EXACT_CAP) -> Invariants:
    """All exact invariants at once.

    ``lip`` counts edges of a longest induced path, taken over all components.
    ``diam`` is None for disconnected graphs; call :func:`diameter` to get the
    domain error instead.
    """
    _check_cap(g, cap)
    alpha = independence_number(g)
    return Invariants(
        alpha=alpha,
        omega=clique_number(g),
        chi=chromatic_number(g),
        chi_complement=chromatic_number(complement(g)),
        tau=g.n - alpha,
        mim=len(max_induced_matching(g)),
        lip=max(len(longest_induced_path(g)) - 1, 0),
        diam=diameter(g) if g.n and g.is_connected() else None,
        max_degree=g.max_degree(),
        min_degree=g.min_degree(),
    )


def common_neighbor_max(g: Graph) -> int:
    """max over pairs u != v of |N(u) & N(v)|."""
    return max((popcount(g.masks[u] & g.masks[v]) for u, v in combinations(range(g.n), 2)), default=0)
