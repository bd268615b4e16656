"""Orderings, partitions, consistency checking and incompatibility graphs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .errors import ParameterError
from .graph import Graph

CLASS_CONSTRAINTS = ("none", "independent", "complete")


@dataclass(frozen=True)
class Variant:
    proper: bool = False
    class_constraint: str = "none"

    def __post_init__(self):
        if self.class_constraint not in CLASS_CONSTRAINTS:
            raise ParameterError(f"class_constraint must be one of {CLASS_CONSTRAINTS}")

    @property
    def name(self) -> str:
        prefix = {"none": "", "independent": "ind", "complete": "comp"}[self.class_constraint]
        return prefix + ("pthin" if self.proper else "thin")

    @classmethod
    def parse(cls, name: str) -> "Variant":
        try:
            return VARIANTS[name]
        except KeyError:
            raise ParameterError(f"unknown variant {name!r}; expected one of {list(VARIANTS)}") from None

    def to_dict(self) -> dict:
        return {"proper": self.proper, "class_constraint": self.class_constraint}

    @classmethod
    def from_dict(cls, data: dict) -> "Variant":
        return cls(bool(data["proper"]), str(data["class_constraint"]))

    def __str__(self) -> str:
        return self.name


VARIANTS = {
    v.name: v
    for v in (
        Variant(False, "none"), Variant(True, "none"),
        Variant(False, "independent"), Variant(True, "independent"),
        Variant(False, "complete"), Variant(True, "complete"),
    )
}
THIN, PTHIN = VARIANTS["thin"], VARIANTS["pthin"]
INDTHIN, INDPTHIN = VARIANTS["indthin"], VARIANTS["indpthin"]
COMPTHIN, COMPPTHIN = VARIANTS["compthin"], VARIANTS["comppthin"]

VariantLike = Union[Variant, str]


def as_variant(v: VariantLike) -> Variant:
    return v if isinstance(v, Variant) else Variant.parse(v)


class VertexOrdering:
    """A permutation of the vertices; ``order[i]`` is the i-th smallest vertex."""

    __slots__ = ("order", "position")

    def __init__(self, order: Sequence[int]):
        order = tuple(int(v) for v in order)
        if sorted(order) != list(range(len(order))):
            raise ParameterError("ordering is not a permutation of [0, n)")
        self.order = order
        pos = [0] * len(order)
        for i, v in enumerate(order):
            pos[v] = i
        self.position = tuple(pos)

    @classmethod
    def identity(cls, n: int) -> "VertexOrdering":
        return cls(range(n))

    def reversed(self) -> "VertexOrdering":
        return VertexOrdering(self.order[::-1])

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self):
        return iter(self.order)

    def __eq__(self, other) -> bool:
        return isinstance(other, VertexOrdering) and self.order == other.order

    def __hash__(self) -> int:
        return hash(self.order)

    def __repr__(self) -> str:
        return f"VertexOrdering({list(self.order)})"


class Partition:
    """Class index per vertex; indices are 0..k-1 and all are used."""

    __slots__ = ("class_of", "k")

    def __init__(self, class_of: Sequence[int]):
        class_of = tuple(int(c) for c in class_of)
        k = max(class_of) + 1 if class_of else 0
        if min(class_of, default=0) < 0 or set(class_of) != set(range(k)):
            raise ParameterError("partition class indices must be exactly 0..k-1, each used")
        self.class_of = class_of
        self.k = k

    @classmethod
    def compact(cls, labels: Sequence) -> "Partition":
        """Relabel arbitrary hashable labels to 0..k-1 by first appearance."""
        index: dict = {}
        return cls([index.setdefault(c, len(index)) for c in labels])

    @classmethod
    def from_classes(cls, n: int, classes: Sequence[Sequence[int]]) -> "Partition":
        out = [-1] * n
        for i, cls_ in enumerate(c for c in classes if len(c)):
            for v in cls_:
                if out[v] != -1:
                    raise ParameterError(f"vertex {v} appears in two classes")
                out[v] = i
        if -1 in out:
            raise ParameterError("classes do not cover every vertex")
        return cls(out)

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.k)]
        for v, c in enumerate(self.class_of):
            out[c].append(v)
        return out

    def class_masks(self) -> list[int]:
        out = [0] * self.k
        for v, c in enumerate(self.class_of):
            out[c] |= 1 << v
        return out

    def __len__(self) -> int:
        return len(self.class_of)

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.class_of == other.class_of

    def __hash__(self) -> int:
        return hash(self.class_of)

    def __repr__(self) -> str:
        return f"Partition({list(self.class_of)})"


@dataclass(frozen=True)
class ConsistencyViolation:
    triple: tuple[int, int, int]  # positions r < s < t
    kind: str  # forward, backward, class_not_independent, class_not_complete
    vertices: tuple[int, int, int] = (0, 0, 0)


def _check_sizes(g: Graph, ord: VertexOrdering, part: Optional[Partition] = None) -> None:
    if len(ord) != g.n or (part is not None and len(part) != g.n):
        raise ParameterError(f"ordering/partition size does not match graph order {g.n}")


def check_consistent(
    g: Graph, ord: VertexOrdering, part: Partition, variant: VariantLike = THIN
) -> Optional[ConsistencyViolation]:
    """None when consistent, otherwise the first violation scanning t, then s, then r.

    A class-constraint violation between positions s < t is reported as the
    triple (s, s, t).
    """
    variant = as_variant(variant)
    _check_sizes(g, ord, part)
    vs = ord.order
    cls = part.class_of
    adj = g.masks
    n = g.n
    for t in range(n):
        vt = vs[t]
        for s in range(t):
            vsx = vs[s]
            if variant.class_constraint != "none" and cls[vsx] == cls[vt]:
                linked = bool(adj[vt] >> vsx & 1)
                if variant.class_constraint == "independent" and linked:
                    return ConsistencyViolation((s, s, t), "class_not_independent", (vsx, vsx, vt))
                if variant.class_constraint == "complete" and not linked:
                    return ConsistencyViolation((s, s, t), "class_not_complete", (vsx, vsx, vt))
            for r in range(s):
                vr = vs[r]
                tr = adj[vt] >> vr & 1
                if not tr:
                    continue
                if cls[vr] == cls[vsx] and not adj[vt] >> vsx & 1:
                    return ConsistencyViolation((r, s, t), "forward", (vr, vsx, vt))
                if variant.proper and cls[vsx] == cls[vt] and not adj[vsx] >> vr & 1:
                    return ConsistencyViolation((r, s, t), "backward", (vr, vsx, vt))
    return None


def is_consistent(g: Graph, ord: VertexOrdering, part: Partition, variant: VariantLike = THIN) -> bool:
    return check_consistent(g, ord, part, variant) is None


def incompatibility_masks(g: Graph, ord: VertexOrdering, strong: bool = False) -> list[int]:
    """Adjacency masks of G_< (or its strong version) on the original labels."""
    _check_sizes(g, ord)
    n = g.n
    adj = g.masks
    vs = ord.order
    prefix = [0] * (n + 1)  # prefix[i]: vertices at positions < i
    for i, v in enumerate(vs):
        prefix[i + 1] = prefix[i] | 1 << v
    full = g.all_mask
    out = [0] * n
    for j in range(n):
        w = vs[j]
        later = full & ~prefix[j + 1]
        for i in range(j):
            v = vs[i]
            # some z > w sees v but not w
            hit = adj[v] & ~adj[w] & later
            if not hit and strong:
                # some x < v sees w but not v
                hit = adj[w] & ~adj[v] & prefix[i]
            if hit:
                out[v] |= 1 << w
                out[w] |= 1 << v
    return out


def incompatibility_graph(g: Graph, ord: VertexOrdering, strong: bool = False) -> Graph:
    return Graph.from_masks(incompatibility_masks(g, ord, strong))


def variant_conflict_masks(g: Graph, ord: VertexOrdering, variant: VariantLike) -> list[int]:
    variant = as_variant(variant)
    masks = incompatibility_masks(g, ord, variant.proper)
    full = g.all_mask
    if variant.class_constraint == "independent":
        masks = [m | a for m, a in zip(masks, g.masks)]
    elif variant.class_constraint == "complete":
        masks = [m | (full & ~a & ~(1 << v)) for v, (m, a) in enumerate(zip(masks, g.masks))]
    return masks


def variant_conflict_graph(g: Graph, ord: VertexOrdering, variant: VariantLike) -> Graph:
    """Graph whose proper colorings are exactly the valid partitions for ``ord``."""
    return Graph.from_masks(variant_conflict_masks(g, ord, variant))
