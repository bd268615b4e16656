"""Witness builders for the upper bounds on products.

Each rule takes witnesses (or just an ordering) for the factors and emits an
ordering and partition for the product, following a fixed recipe:

* ``concat``: V(G1) in its order, then V(G2) in its order;
* ``splice``: G1's order with v replaced by G2's order;
* ``lex``: pairs ordered by the G1 coordinate first, then the G2 coordinate;
* ``lex21``: pairs ordered by the G2 coordinate first.

The emitted witness is always re-verified against the product graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Optional, Sequence, Union

from .errors import CertificationError, ParameterError
from .graph import Graph, bits, induced_subgraph
from .products import ProductKind, apply_product, lex_vertex_map
from .representation import (
    COMPPTHIN, COMPTHIN, INDPTHIN, INDTHIN, PTHIN, THIN, Partition, Variant, VertexOrdering,
)
from .solver import ThinWitness

FORMULAS: dict[str, Callable[[int, int, int, int], int]] = {
    "max(t1,t2)": lambda t1, t2, n1, n2: max(t1, t2),
    "t1+t2": lambda t1, t2, n1, n2: t1 + t2,
    "t1+t2-1": lambda t1, t2, n1, n2: t1 + t2 - 1,
    "t1": lambda t1, t2, n1, n2: t1,
    "t1*t2": lambda t1, t2, n1, n2: t1 * t2,
    "n1*t2": lambda t1, t2, n1, n2: n1 * t2,
    "t1*n2": lambda t1, t2, n1, n2: t1 * n2,
}


@dataclass(frozen=True)
class CompositionRule:
    name: str
    kind: str
    variant_in: tuple  # (Variant or None, Variant or None); None means only an ordering is used
    variant_out: Variant
    formula: str
    theorem_id: str
    recipe: str
    equality: Optional[str] = None  # None, "always" or "neither_complete"
    needs_complete_g2: bool = False
    merged: bool = False

    def bound(self, t1: int, t2: int, n1: int, n2: int) -> int:
        return FORMULAS[self.formula](t1, t2, n1, n2)

    def is_equality(self, g1: Graph, g2: Graph) -> bool:
        if self.equality == "always":
            return True
        if self.equality == "neither_complete":
            return not g1.is_complete() and not g2.is_complete()
        return False

    def to_dict(self) -> dict:
        return {
            "name": self.name, "kind": self.kind,
            "variant_in": [v.name if v else None for v in self.variant_in],
            "variant_out": self.variant_out.name, "formula": self.formula,
            "theorem_id": self.theorem_id, "recipe": self.recipe,
            "equality": self.equality, "needs_complete_g2": self.needs_complete_g2,
        }


def _ind(v: Variant) -> Variant:
    return INDPTHIN if v.proper else INDTHIN


def _build_catalog() -> list[CompositionRule]:
    R = CompositionRule
    out: list[CompositionRule] = []
    for f in (THIN, PTHIN, INDTHIN, INDPTHIN):
        tid = "union" if f.class_constraint == "none" else "union-ind"
        out.append(R(f"union-max:{f}", "union", (f, f), f, "max(t1,t2)", tid, "concat", "always"))
    for f in (COMPTHIN, COMPPTHIN):
        out.append(R(f"union-sum:{f}", "union", (f, f), f, "t1+t2", "union-comp", "concat", "always"))
    out.append(R("join-sum:thin", "join", (THIN, THIN), THIN, "t1+t2", "join2", "concat", "neither_complete"))
    out.append(R("join-sum:pthin", "join", (PTHIN, PTHIN), PTHIN, "t1+t2", "join", "concat"))
    for f in (INDTHIN, INDPTHIN):
        out.append(R(f"join-sum:{f}", "join", (f, f), f, "t1+t2", "join-ind", "concat", "always"))
    for f in (COMPTHIN, COMPPTHIN):
        out.append(R(f"join-sum:{f}", "join", (f, f), f, "t1+t2", "join-comp", "concat"))
    out.append(R("join-complete:thin", "join", (THIN, None), THIN, "t1", "join", "concat", "always", True))
    out.append(R("join-complete:compthin", "join", (COMPTHIN, None), COMPTHIN, "t1", "join-comp",
                 "concat", "always", True))
    for f in (THIN, PTHIN, COMPTHIN, COMPPTHIN):
        out.append(R(f"lexv-sum:{f}", "lex_vertex", (f, f), f, "t1+t2", "lexv", "splice"))
    for f in (THIN, INDTHIN, PTHIN, INDPTHIN):
        out.append(R(f"lexv-merged:{f}", "lex_vertex", (_ind(f), f), f, "t1+t2-1", "lexv", "splice",
                     merged=True))
    for f in (THIN, PTHIN, COMPTHIN, COMPPTHIN):
        out.append(R(f"lexv-complete:{f}", "lex_vertex", (f, None), f, "t1", "lexv", "splice",
                     "always", True))
    for f in (THIN, PTHIN, COMPTHIN, COMPPTHIN):
        out.append(R(f"lex-complete:{f}", "lex", (f, None), f, "t1", "lex", "lex", "always", True))
    for f in (THIN, INDTHIN, PTHIN, INDPTHIN):
        out.append(R(f"lex-product:{f}", "lex", (_ind(f), f), f, "t1*t2", "lex", "lex"))
    for f in (COMPTHIN, COMPPTHIN):
        out.append(R(f"lex-rows:{f}", "lex", (None, f), f, "n1*t2", "lex", "lex"))
    for f in (THIN, PTHIN, INDTHIN, INDPTHIN, COMPTHIN, COMPPTHIN):
        out.append(R(f"cartesian:{f}", "cartesian", (f, None), f, "t1*n2", "cart", "lex"))
    for f in (THIN, PTHIN, INDTHIN, INDPTHIN):
        out.append(R(f"direct:{f}", "direct", (_ind(f), None), f, "t1*n2", "direct", "lex"))
    for f in (THIN, PTHIN, INDTHIN, INDPTHIN, COMPTHIN, COMPPTHIN):
        out.append(R(f"strong:{f}", "strong", (f, None), f, "t1*n2", "strong", "lex"))
    for f in (THIN, PTHIN, COMPTHIN, COMPPTHIN):
        out.append(R(f"strong-complete:{f}", "strong", (f, None), f, "t1", "strong", "lex", "always", True))
    for f in (THIN, PTHIN, INDTHIN, INDPTHIN):
        out.append(R(f"conormal:{f}", "conormal", (_ind(f), None), f, "t1*n2", "conorm", "lex"))
    for f in (THIN, PTHIN, INDTHIN, INDPTHIN, COMPTHIN, COMPPTHIN):
        out.append(R(f"homomorphic:{f}", "homomorphic", (f, None), f, "t1*n2", "homo", "lex"))
    for f in (THIN, PTHIN, INDTHIN, INDPTHIN):
        out.append(R(f"hom:{f}", "hom", (None, _ind(f)), f, "n1*t2", "hom", "lex21"))
    return out


_CATALOG = _build_catalog()
_BY_NAME = {r.name: r for r in _CATALOG}


def rule_catalog() -> list[CompositionRule]:
    return list(_CATALOG)


def get_rule(name: str) -> CompositionRule:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise ParameterError(f"unknown rule {name!r}") from None


@dataclass
class Composition:
    rule: CompositionRule
    graph: Graph
    witness: ThinWitness
    nominal: int  # the formula value
    t1: int
    t2: int

    @property
    def actual(self) -> int:
        return self.witness.value


OrderingLike = Union[ThinWitness, VertexOrdering, Sequence[int], None]


def _check_factor(g: Graph, w: OrderingLike, need: Optional[Variant], label: str):
    """Return (ordering, partition or None)."""
    if isinstance(w, ThinWitness):
        if need is not None and w.variant != need:
            raise ParameterError(f"{label} witness is {w.variant}, rule needs {need}")
        try:
            w.verify(g)
        except CertificationError as exc:
            raise CertificationError(f"{label} witness does not certify its graph: {exc}") from exc
        return w.ordering, w.partition
    if need is not None:
        raise ParameterError(f"{label} needs a {need} witness")
    if w is None:
        return VertexOrdering.identity(g.n), None
    ord = w if isinstance(w, VertexOrdering) else VertexOrdering(w)
    if len(ord) != g.n:
        raise ParameterError(f"{label} ordering has {len(ord)} vertices, graph has {g.n}")
    return ord, None


def compose(
    rule: Union[CompositionRule, str],
    g1: Graph,
    w1: OrderingLike,
    g2: Graph,
    w2: OrderingLike = None,
    vertex: Optional[int] = None,
) -> Composition:
    if isinstance(rule, str):
        rule = get_rule(rule)
    if rule.needs_complete_g2 and not g2.is_complete():
        raise ParameterError(f"rule {rule.name} needs a complete second factor")
    o1, p1 = _check_factor(g1, w1, rule.variant_in[0], "first")
    o2, p2 = _check_factor(g2, w2, rule.variant_in[1], "second")
    n1, n2 = g1.n, g2.n
    t1 = p1.k if p1 is not None else n1
    t2 = p2.k if p2 is not None else (1 if rule.needs_complete_g2 else n2)
    if rule.kind == "lex_vertex":
        if vertex is None:
            raise ParameterError("lex_vertex rules need the substituted vertex")
        kind = ProductKind("lex_vertex", vertex)
    else:
        kind = ProductKind(rule.kind)
    product = apply_product(kind, g1, g2)
    order, labels = _RECIPES[rule.recipe](rule, g1, o1, p1, g2, o2, p2, vertex)
    witness = ThinWitness(rule.variant_out, VertexOrdering(order), Partition.compact(labels))
    try:
        witness.verify(product)
    except CertificationError as exc:
        raise CertificationError(f"rule {rule.name} produced an invalid witness: {exc}") from exc
    return Composition(rule, product, witness, rule.bound(t1, t2, n1, n2), t1, t2)


def compose_witness(rule, g1: Graph, w1: OrderingLike, g2: Graph, w2: OrderingLike = None,
                    vertex: Optional[int] = None) -> ThinWitness:
    return compose(rule, g1, w1, g2, w2, vertex).witness


# -- recipes -------------------------------------------------------------------
# each returns (ordering of product vertices, class label per product vertex)

def _concat(rule, g1, o1, p1, g2, o2, p2, vertex):
    n1 = g1.n
    order = list(o1) + [n1 + w for w in o2]
    labels: list = [None] * (n1 + g2.n)
    for v in range(n1):
        labels[v] = (1, p1.class_of[v])
    for w in range(g2.n):
        if rule.needs_complete_g2:
            # V(G2) joins the class of the last vertex of G1
            labels[n1 + w] = labels[o1.order[-1]] if n1 else (2, 0)
        elif rule.formula == "max(t1,t2)":
            labels[n1 + w] = (1, p2.class_of[w])
        else:
            labels[n1 + w] = (2, p2.class_of[w])
    return order, _canon_labels(order, labels)


def _splice(rule, g1, o1, p1, g2, o2, p2, vertex):
    n1, n2 = g1.n, g2.n
    if not 0 <= vertex < n1:
        raise ParameterError(f"substituted vertex {vertex} outside [0, {n1})")
    new = lex_vertex_map(n1, n2, vertex)
    order: list[int] = []
    for u in o1:
        if u == vertex:
            order += [vertex + w for w in o2]
        else:
            order.append(new[u])
    labels: list = [None] * (n1 - 1 + n2)
    vclass = p1.class_of[vertex]
    for u in range(n1):
        if u != vertex:
            labels[new[u]] = (1, p1.class_of[u])
    for w in range(n2):
        if rule.needs_complete_g2:
            labels[vertex + w] = (1, vclass)
        elif rule.merged and p2.class_of[w] == 0:
            labels[vertex + w] = (1, vclass)
        else:
            labels[vertex + w] = (2, p2.class_of[w])
    return order, _canon_labels(order, labels)


def _lex(rule, g1, o1, p1, g2, o2, p2, vertex):
    n2 = g2.n
    order = [v * n2 + w for v in o1 for w in o2]
    labels: list = [None] * (g1.n * n2)
    for v in range(g1.n):
        for w in range(n2):
            if rule.needs_complete_g2:
                lab = p1.class_of[v]
            elif rule.formula == "t1*t2":
                lab = (p1.class_of[v], p2.class_of[w])
            elif rule.formula == "n1*t2":
                lab = (v, p2.class_of[w])
            else:  # t1*n2
                lab = (p1.class_of[v], w)
            labels[v * n2 + w] = lab
    return order, _canon_labels(order, labels)


def _lex21(rule, g1, o1, p1, g2, o2, p2, vertex):
    n2 = g2.n
    order = [v * n2 + w for w in o2 for v in o1]
    labels = [(v, p2.class_of[w]) for v in range(g1.n) for w in range(n2)]
    return order, _canon_labels(order, labels)


def _canon_labels(order: Sequence[int], labels: Sequence) -> list[int]:
    # number classes by first appearance along the ordering, for stable output
    index: dict = {}
    for v in order:
        index.setdefault(labels[v], len(index))
    return [index[lab] for lab in labels]


_RECIPES = {"concat": _concat, "splice": _splice, "lex": _lex, "lex21": _lex21}


# -- strengthenings ------------------------------------------------------------

COMPONENTWISE_KINDS = ("cartesian", "direct", "strong")


def compose_componentwise(rule: Union[CompositionRule, str], g1: Graph, w1: ThinWitness, g2: Graph) -> ThinWitness:
    """Apply a per-component rule to each component of G2 and merge with the union law.

    Classes of different components are shared (class i with class i), so
    the count is the maximum over components; complete classes cannot be
    shared, so for those variants the counts add up.
    """
    if isinstance(rule, str):
        rule = get_rule(rule)
    if rule.kind not in COMPONENTWISE_KINDS or rule.needs_complete_g2:
        raise ParameterError(f"componentwise composition is not available for {rule.name}")
    shared = rule.variant_out.class_constraint != "complete"
    n2 = g2.n
    product = apply_product(rule.kind, g1, g2)
    order: list[int] = []
    labels: list = [0] * (g1.n * n2)
    for ci, comp in enumerate(g2.components()):
        sub = induced_subgraph(g2, comp)
        part = compose(rule, g1, w1, sub).witness
        m = len(comp)
        # sub vertex (v, j) is product vertex (v, comp[j])
        back = [v * n2 + comp[j] for v in range(g1.n) for j in range(m)]
        order += [back[x] for x in part.ordering]
        for x, c in enumerate(part.partition.class_of):
            labels[back[x]] = c if shared else (ci, c)
    witness = ThinWitness(rule.variant_out, VertexOrdering(order), Partition.compact(labels))
    return witness.verify(product)


def homogeneous_sets(g: Graph, cap: int = 10) -> list[int]:
    """All nontrivial homogeneous sets (2 <= |H| < n) as bitmasks, by exhaustive search."""
    if g.n > cap:
        raise ParameterError(f"homogeneous-set search is exhaustive and capped at {cap} vertices")
    out = []
    full = g.all_mask
    for size in range(2, g.n):
        for combo in combinations(range(g.n), size):
            h = sum(1 << v for v in combo)
            ok = True
            for x in bits(full & ~h):
                seen = g.masks[x] & h
                if seen and seen != h:
                    ok = False
                    break
            if ok:
                out.append(h)
    return out


def contract(g: Graph, h: int) -> tuple[Graph, int, list[int]]:
    """Contract homogeneous set H to one vertex.

    Returns (G|H, the new vertex, perm) where perm maps each vertex of the
    lex_vertex product G|H •_v G[H] back to its label in G.
    """
    members = list(bits(h))
    rest = [v for v in range(g.n) if not h >> v & 1]
    # the contracted vertex takes the place of the smallest member
    anchor = members[0]
    keep = sorted(rest + [anchor])
    idx = {v: i for i, v in enumerate(keep)}
    edges = []
    for u, v in g.edges():
        a = anchor if h >> u & 1 else u
        b = anchor if h >> v & 1 else v
        if a != b:
            edges.append((min(idx[a], idx[b]), max(idx[a], idx[b])))
    quotient = Graph(len(keep), sorted(set(edges)))
    vq = idx[anchor]
    new = lex_vertex_map(len(keep), len(members), vq)
    perm = [0] * g.n
    for v in rest:
        perm[new[idx[v]]] = v
    for j, m in enumerate(members):
        perm[vq + j] = m
    return quotient, vq, perm


def compose_homogeneous(g: Graph, h: int, rule: Union[CompositionRule, str],
                        wq: ThinWitness, wh: Optional[ThinWitness] = None) -> ThinWitness:
    """Witness for G from witnesses of the quotient G|H and of G[H], via a lex_vertex rule."""
    if isinstance(rule, str):
        rule = get_rule(rule)
    if rule.kind != "lex_vertex":
        raise ParameterError("homogeneous-set composition uses lex_vertex rules")
    quotient, vq, perm = contract(g, h)
    sub = induced_subgraph(g, bits(h))
    comp = compose(rule, quotient, wq, sub, wh, vertex=vq)
    # relabel product vertices back to G's labels
    witness = comp.witness.relabel(perm)
    return witness.verify(g)


def largest_component_size(g: Graph) -> int:
    return max((len(c) for c in g.components()), default=0)
