"""Exact computation of the six thinness variants.

``exact_value`` decides "is there an ordering and a k-class partition" for
increasing k with a depth-first search that builds the ordering left to right
and assigns each new vertex its class immediately.  A placement of vertex s
into class c is legal iff

* every unplaced vertex adjacent to an earlier member of c is adjacent to s
  (otherwise the triple (member, s, that vertex) breaks consistency);
* proper only: s is not adjacent to a vertex r placed before some member m
  of c with r, m nonadjacent (that triple breaks the reversed condition);
* independent/complete classes: s has no / every neighbor among the members.

Everything the rest of the search needs about a class is three masks over
the unplaced vertices (its open neighbors, its barred vertices, the vertices
adjacent to all its members), so failures are memoized on the placed set plus
the sorted class descriptors.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .canon import orbit_representatives
from .errors import CertificationError, ParameterError, SizeError
from .graph import Graph, bits, complement
from .invariants import chromatic_coloring
from .representation import (
    Partition, Variant, VariantLike, VertexOrdering, as_variant, check_consistent,
    variant_conflict_masks,
)

ORDERING_CAP = 16
SEARCH_CAP = 10  # full guarantees; larger graphs need a timeout
ORACLE_CAP = 7


@dataclass(frozen=True)
class ThinWitness:
    variant: Variant
    ordering: VertexOrdering
    partition: Partition

    @property
    def value(self) -> int:
        return self.partition.k

    def violation(self, g: Graph):
        return check_consistent(g, self.ordering, self.partition, self.variant)

    def verify(self, g: Graph) -> "ThinWitness":
        if len(self.ordering) != g.n:
            raise CertificationError(f"witness covers {len(self.ordering)} vertices, graph has {g.n}")
        bad = self.violation(g)
        if bad is not None:
            raise CertificationError(f"witness for {self.variant} fails: {bad}")
        return self

    def to_dict(self) -> dict:
        return {
            "variant": self.variant.to_dict(),
            "order": list(self.ordering.order),
            "classes": list(self.partition.class_of),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ThinWitness":
        try:
            return cls(
                Variant.from_dict(data["variant"]),
                VertexOrdering(data["order"]),
                Partition(data["classes"]),
            )
        except (KeyError, TypeError) as exc:
            raise ParameterError(f"malformed witness record: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "ThinWitness":
        return cls.from_dict(json.loads(text))

    def relabel(self, perm: Sequence[int]) -> "ThinWitness":
        """Witness for the graph with vertex v renamed perm[v]."""
        n = len(perm)
        classes = [0] * n
        for v, c in enumerate(self.partition.class_of):
            classes[perm[v]] = c
        return ThinWitness(self.variant, VertexOrdering([perm[v] for v in self.ordering]), Partition(classes))


@dataclass
class SolveStats:
    nodes: int = 0
    memo_hits: int = 0
    orderings: int = 0
    pruned_free_class: int = 0
    pruned_duplicate_class: int = 0
    levels: list = field(default_factory=list)  # k values refuted


@dataclass
class SolveResult:
    value: int
    witness: ThinWitness
    exact: bool = True
    lower_bound: int = 0
    millis: float = 0.0
    stats: SolveStats = field(default_factory=SolveStats)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "exact": self.exact,
            "lower_bound": self.lower_bound,
            "witness": self.witness.to_dict(),
            "millis": round(self.millis, 3),
            "stats": {
                "nodes": self.stats.nodes,
                "memo_hits": self.stats.memo_hits,
                "orderings": self.stats.orderings,
                "pruned_free_class": self.stats.pruned_free_class,
                "pruned_duplicate_class": self.stats.pruned_duplicate_class,
                "refuted": list(self.stats.levels),
            },
        }


class _Timeout(Exception):
    pass


def min_classes_for_ordering(
    g: Graph, ord: VertexOrdering, variant: VariantLike = "thin", cap: Optional[int] = ORDERING_CAP
) -> tuple[int, Partition]:
    """Chromatic number of the variant's conflict graph, with an optimal partition."""
    variant = as_variant(variant)
    if cap is not None and g.n > cap:
        raise SizeError(f"graph has {g.n} vertices, cap is {cap}")
    if g.n == 0:
        return 0, Partition([])
    k, colors = chromatic_coloring(variant_conflict_masks(g, ord, variant))
    return k, Partition.compact(colors)


def _trivial_lower(g: Graph, variant: Variant) -> int:
    if g.n == 0:
        return 0
    if variant.class_constraint == "independent":
        return chromatic_coloring(g.masks)[0]
    if variant.class_constraint == "complete":
        return chromatic_coloring(complement(g).masks)[0]
    return 1


def _seed_orderings(g: Graph) -> Iterable[list[int]]:
    n = g.n
    yield list(range(n))
    yield sorted(range(n), key=lambda v: (g.degree(v), v))
    yield sorted(range(n), key=lambda v: (-g.degree(v), v))
    # BFS from each vertex of minimum degree
    for s in sorted(range(n), key=lambda v: (g.degree(v), v))[:2]:
        seen, out, frontier = {s}, [s], [s]
        while frontier:
            nxt = []
            for v in frontier:
                for u in sorted(g.neighbors(v)):
                    if u not in seen:
                        seen.add(u)
                        out.append(u)
                        nxt.append(u)
            frontier = nxt
        out += [v for v in range(n) if v not in seen]
        yield out


def upper_bound_witness(g: Graph, variant: VariantLike) -> ThinWitness:
    """Best witness over a handful of cheap orderings."""
    variant = as_variant(variant)
    best = None
    for order in _seed_orderings(g):
        ord = VertexOrdering(order)
        k, part = min_classes_for_ordering(g, ord, variant, cap=None)
        if best is None or k < best.value:
            best = ThinWitness(variant, ord, part)
    return best


class _Search:
    def __init__(self, g: Graph, variant: Variant, deadline: Optional[float], stats: SolveStats):
        self.g = g
        self.adj = g.masks
        self.full = g.all_mask
        self.proper = variant.proper
        self.cc = variant.class_constraint
        self.deadline = deadline
        self.stats = stats
        self.dead: set = set()

    def feasible(self, k: int, roots: Sequence[int]) -> Optional[tuple[list[int], list[int]]]:
        self.k = k
        self.dead = set()
        self.order: list[int] = []
        self.cls: list[int] = []
        if self._extend(0, (), roots):
            return list(self.order), list(self.cls)
        return None

    def _extend(self, placed: int, descs: tuple, roots: Optional[Sequence[int]] = None) -> bool:
        if placed == self.full:
            return True
        st = self.stats
        st.nodes += 1
        if self.deadline is not None and st.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            raise _Timeout
        key = (placed, descs)
        if key in self.dead:
            st.memo_hits += 1
            return False
        adj = self.adj
        unplaced = self.full & ~placed
        candidates = roots if roots is not None else bits(unplaced)
        for s in candidates:
            rest = unplaced & ~(1 << s)
            nonadj_before = placed & ~adj[s]
            barred = 0
            if self.proper:
                for x in bits(nonadj_before):
                    barred |= adj[x]
            seen = set()
            has_free = False
            for i, (a, f, kk) in enumerate(descs):
                if a == 0 and f == 0 and self.cc != "complete":
                    has_free = True
                if (a, f, kk) in seen:
                    st.pruned_duplicate_class += 1
                    continue
                seen.add((a, f, kk))
                if (a & rest) & ~adj[s]:
                    continue
                if self.proper and f >> s & 1:
                    continue
                if self.cc == "independent" and a >> s & 1:
                    continue
                if self.cc == "complete" and not kk >> s & 1:
                    continue
                nd = ((a | adj[s]) & rest, (f | barred) & rest, kk & adj[s] & rest)
                new = descs[:i] + (nd,) + descs[i + 1:]
                self.order.append(s)
                self.cls.append(i)
                if self._extend(placed | 1 << s, tuple(sorted(new))):
                    return True
                self.order.pop()
                self.cls.pop()
            if len(descs) < self.k:
                if has_free:
                    st.pruned_free_class += 1
                    continue
                nd = (adj[s] & rest, barred & rest, adj[s] & rest)
                self.order.append(s)
                self.cls.append(len(descs))
                if self._extend(placed | 1 << s, tuple(sorted(descs + (nd,)))):
                    return True
                self.order.pop()
                self.cls.pop()
        self.dead.add(key)
        return False


def exact_value(
    g: Graph,
    variant: VariantLike = "thin",
    timeout: Optional[float] = None,
    prune: bool = True,
    cap: Optional[int] = None,
) -> SolveResult:
    """Minimum number of classes over all orderings.

    With ``prune=False`` every ordering is enumerated and colored, which is
    only practical up to about 8 vertices.  When ``timeout`` (seconds) runs
    out the best witness found is returned with ``exact=False``.
    """
    variant = as_variant(variant)
    if cap is not None and g.n > cap:
        raise SizeError(f"graph has {g.n} vertices, search cap is {cap}")
    start = time.monotonic()
    stats = SolveStats()
    if g.n == 0:
        w = ThinWitness(variant, VertexOrdering([]), Partition([]))
        return SolveResult(0, w, True, 0, 0.0, stats)
    if not prune:
        return _exhaustive(g, variant, start, stats)

    best = upper_bound_witness(g, variant)
    lower = _trivial_lower(g, variant)
    deadline = start + timeout if timeout is not None else None
    search = _Search(g, variant, deadline, stats)
    roots = orbit_representatives(g)
    k = lower
    try:
        while k < best.value:
            found = search.feasible(k, roots)
            if found is not None:
                best = _replay(g, variant, *found)
                break
            stats.levels.append(k)
            k += 1
    except _Timeout:
        return SolveResult(best.value, best.verify(g), False, k, (time.monotonic() - start) * 1000, stats)
    return SolveResult(best.value, best.verify(g), True, best.value, (time.monotonic() - start) * 1000, stats)


def _replay(g: Graph, variant: Variant, order: list[int], slots: list[int]) -> ThinWitness:
    """Turn a search path (slot indices into sorted descriptor tuples) into a witness."""
    adj = g.masks
    full = g.all_mask
    placed = 0
    descs: list[tuple] = []  # (desc, class id)
    classes = [0] * g.n
    for s, slot in zip(order, slots):
        rest = full & ~placed & ~(1 << s)
        barred = 0
        if variant.proper:
            for x in bits(placed & ~adj[s]):
                barred |= adj[x]
        if slot == len(descs):
            cid = len(descs)
            descs.append(((adj[s] & rest, barred & rest, adj[s] & rest), cid))
        else:
            (a, f, kk), cid = descs[slot]
            descs[slot] = (((a | adj[s]) & rest, (f | barred) & rest, kk & adj[s] & rest), cid)
        classes[s] = cid
        descs.sort(key=lambda d: d[0])
        placed |= 1 << s
    return ThinWitness(variant, VertexOrdering(order), Partition.compact(classes))


def _exhaustive(g: Graph, variant: Variant, start: float, stats: SolveStats) -> SolveResult:
    best = None
    for perm in itertools.permutations(range(g.n)):
        stats.orderings += 1
        ord = VertexOrdering(perm)
        k, part = min_classes_for_ordering(g, ord, variant, cap=None)
        if best is None or k < best.value:
            best = ThinWitness(variant, ord, part)
    return SolveResult(best.value, best.verify(g), True, best.value, (time.monotonic() - start) * 1000, stats)


def thinness(g: Graph, variant: VariantLike = "thin", **kwargs) -> int:
    return exact_value(g, variant, **kwargs).value


# -- definition-level oracle ---------------------------------------------------

def _set_partitions(n: int, k: int) -> Iterable[list[int]]:
    """Restricted growth strings of length n using exactly k blocks."""
    a = [0] * n

    def rec(i: int, used: int):
        if n - i < k - used:
            return
        if i == n:
            if used == k:
                yield list(a)
            return
        for c in range(min(used + 1, k)):
            a[i] = c
            yield from rec(i + 1, max(used, c + 1))

    if n == 0:
        if k == 0:
            yield []
        return
    yield from rec(0, 0)


def brute_force_oracle(g: Graph, variant: VariantLike = "thin") -> int:
    """Value by enumerating partitions and orderings against the triple definition."""
    variant = as_variant(variant)
    n = g.n
    if n > ORACLE_CAP:
        raise SizeError(f"oracle is limited to {ORACLE_CAP} vertices, got {n}")
    if n == 0:
        return 0
    e = [[g.has_edge(u, v) for v in range(n)] for u in range(n)]
    perms = list(itertools.permutations(range(n)))
    for k in range(1, n + 1):
        for part in _set_partitions(n, k):
            if not _classes_ok(e, part, variant.class_constraint):
                continue
            for p in perms:
                if _ordering_ok(e, p, part, variant.proper):
                    return k
    raise AssertionError("singleton classes always work")


def _classes_ok(e, part, constraint: str) -> bool:
    if constraint == "none":
        return True
    n = len(part)
    want = constraint == "complete"
    for u in range(n):
        for v in range(u + 1, n):
            if part[u] == part[v] and e[u][v] != want:
                return False
    return True


def _ordering_ok(e, p, part, proper: bool) -> bool:
    n = len(p)
    for ti in range(n):
        t = p[ti]
        et = e[t]
        for si in range(ti):
            s = p[si]
            for ri in range(si):
                r = p[ri]
                if not et[r]:
                    continue
                if part[r] == part[s] and not et[s]:
                    return False
                if proper and part[s] == part[t] and not e[s][r]:
                    return False
    return True
