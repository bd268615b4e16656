"""Verification campaigns, the solve cache, and corpus runs.

A campaign checks one theorem (or a family of them) on a set of instances
and returns one TheoremCheck row per claim.  Rows are pass, fail or skip;
skips are instances that exceeded a cap or timed out, never failures.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import time
from dataclasses import asdict, dataclass, field
from itertools import product as cartesian_pairs
from pathlib import Path
from typing import Any, Callable, Iterable, Optional, Sequence, Union

from . import bounds as B
from .canon import canonical_key, canonical_labeling, isomorphic
from .constructions import CompositionRule, compose, compose_homogeneous, contract, homogeneous_sets, rule_catalog
from .corpus import graphs_up_to, random_corpus
from .errors import CertificationError, ConfigError
from .families import complete, complete_bipartite, complement_matching, crown, cycle, empty, grid, hypercube, matching, path
from .graph import Graph, complement, induced_subgraph
from .invariants import isoperimetric_peak
from .products import PAIR_KINDS, apply_product, cartesian, conormal, direct, hom, homomorphic, join, lex, modular, strong, union
from .representation import VARIANTS, Variant, as_variant
from .solver import ThinWitness, brute_force_oracle, exact_value

ENGINE_VERSION = "1"
CACHE_ENV = "THINNESS_CACHE"
DEFAULT_TIMEOUT = 60.0
DEFAULT_EXACT_PRODUCT_CAP = 8
DEFAULT_EQUALITY_CAP = 16
CSV_COLUMNS = ("theorem_id", "instance", "variant", "claimed", "computed", "verdict", "millis")


# -- cache ---------------------------------------------------------------------

@dataclass
class CacheEntry:
    key: str
    variant: str
    value: int
    exact: bool
    lower_bound: int
    witness: dict  # witness on the canonically relabeled graph
    millis: float
    timeout: Optional[float] = None
    engine: str = ENGINE_VERSION

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "CacheEntry":
        return cls(**{k: data[k] for k in cls.__dataclass_fields__ if k in data})


def default_cache_path() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "thinness" / "results.jsonl"


class ResultCache:
    """Append-only JSON-lines store of solve results; entries from other engine versions are ignored."""

    def __init__(self, path: Union[str, Path, None] = None, persist: bool = True):
        self.path = Path(path) if path is not None else (default_cache_path() if persist else None)
        self._entries: dict[tuple[str, str], CacheEntry] = {}
        if self.path is not None and self.path.exists():
            self._load()

    @classmethod
    def memory(cls) -> "ResultCache":
        return cls(None, persist=False)

    def _load(self) -> None:
        with open(self.path, encoding="utf-8") as fh:
            for line in fh:
                try:
                    entry = CacheEntry.from_dict(json.loads(line))
                except (ValueError, TypeError, KeyError):
                    continue  # a torn or foreign line
                if entry.engine == ENGINE_VERSION:
                    self._remember(entry)

    def _remember(self, entry: CacheEntry) -> None:
        k = (entry.key, entry.variant)
        old = self._entries.get(k)
        if old is None or entry.exact or not old.exact:
            self._entries[k] = entry

    def get(self, key: str, variant: str) -> Optional[CacheEntry]:
        return self._entries.get((key, variant))

    def put(self, entry: CacheEntry) -> None:
        self._remember(entry)
        if self.path is None:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        line = json.dumps(entry.to_dict(), sort_keys=True) + "\n"
        # one write per entry on an O_APPEND descriptor keeps concurrent appends whole
        fd = os.open(self.path, os.O_WRONLY | os.O_APPEND | os.O_CREAT, 0o644)
        try:
            os.write(fd, line.encode("utf-8"))
        finally:
            os.close(fd)

    def __len__(self) -> int:
        return len(self._entries)


@dataclass
class Solved:
    value: int
    exact: bool
    lower_bound: int
    millis: float
    witness: ThinWitness


class Engine:
    """Exact solves behind the cache."""

    def __init__(self, cache: Optional[ResultCache] = None, timeout: Optional[float] = DEFAULT_TIMEOUT):
        self.cache = cache if cache is not None else ResultCache.memory()
        self.timeout = timeout

    def solve(self, g: Graph, variant: Union[Variant, str] = "thin") -> Solved:
        variant = as_variant(variant)
        if g.n <= 10:
            cert, lab = canonical_labeling(g)
            key = f"c{g.n}:" + ",".join(format(r, "x") for r in cert)
        else:
            key, lab = canonical_key(g), list(range(g.n))
        entry = self.cache.get(key, variant.name)
        if entry is not None and (entry.exact or self._covers(entry.timeout)):
            inv = [0] * g.n
            for v, c in enumerate(lab):
                inv[c] = v
            w = ThinWitness.from_dict(entry.witness).relabel(inv)
            return Solved(entry.value, entry.exact, entry.lower_bound, entry.millis, w)
        res = exact_value(g, variant, timeout=self.timeout)
        millis = round(res.millis, 1)
        self.cache.put(CacheEntry(key, variant.name, res.value, res.exact, res.lower_bound,
                                  res.witness.relabel(lab).to_dict(), millis, self.timeout))
        return Solved(res.value, res.exact, res.lower_bound, millis, res.witness)

    def _covers(self, timeout: Optional[float]) -> bool:
        if timeout is None:
            return True
        return self.timeout is not None and timeout >= self.timeout

    def value(self, g: Graph, variant: Union[Variant, str] = "thin") -> Optional[int]:
        s = self.solve(g, variant)
        return s.value if s.exact else None


# -- rows ----------------------------------------------------------------------

@dataclass
class TheoremCheck:
    theorem_id: str
    instance: str
    variant: str
    claimed: str
    computed: str
    verdict: str  # pass, fail or skip
    millis: float = 0.0
    detail: dict = field(default_factory=dict)

    def row(self) -> list:
        return [self.theorem_id, self.instance, self.variant, self.claimed, self.computed,
                self.verdict, f"{self.millis:.1f}"]

    def to_dict(self) -> dict:
        d = dict(zip(CSV_COLUMNS, self.row()))
        d["detail"] = self.detail
        return d


_RELATIONS: dict[str, Callable[[Any, Any], bool]] = {
    "=": lambda a, b: a == b,
    "<=": lambda a, b: a <= b,
    ">=": lambda a, b: a >= b,
    ">": lambda a, b: a > b,
    "<": lambda a, b: a < b,
}


def relation_holds(rel: str, computed, target) -> bool:
    return _RELATIONS[rel](computed, target)


def check_row(tid: str, instance: str, variant: str, rel: str, target, computed, millis: float = 0.0,
              **detail) -> TheoremCheck:
    if computed is None:
        return TheoremCheck(tid, instance, variant, f"{rel} {target}", "n/a", "skip", millis, detail)
    verdict = "pass" if relation_holds(rel, computed, target) else "fail"
    return TheoremCheck(tid, instance, variant, f"{rel} {target}", str(computed), verdict, millis, detail)


def solved_row(tid: str, instance: str, variant: str, rel: str, target, s: Solved, **detail) -> TheoremCheck:
    """Compare a solve to a target; a timed-out solve can still settle one-sided claims."""
    if s.exact:
        return check_row(tid, instance, variant, rel, target, s.value, s.millis, **detail)
    detail = dict(detail, lower_bound=s.lower_bound, upper_bound=s.value)
    if rel in (">=", ">") and relation_holds(rel, s.lower_bound, target):
        return TheoremCheck(tid, instance, variant, f"{rel} {target}", f">= {s.lower_bound}", "pass", s.millis, detail)
    if rel in ("<=", "<") and relation_holds(rel, s.value, target):
        return TheoremCheck(tid, instance, variant, f"{rel} {target}", f"<= {s.value}", "pass", s.millis, detail)
    return TheoremCheck(tid, instance, variant, f"{rel} {target}", f"[{s.lower_bound}, {s.value}]", "skip",
                        s.millis, dict(detail, reason="timeout"))


def fact_row(tid: str, instance: str, holds: bool, claimed: str = "holds", variant: str = "-", **detail) -> TheoremCheck:
    return TheoremCheck(tid, instance, variant, claimed, "holds" if holds else "violated",
                        "pass" if holds else "fail", 0.0, detail)


def graph_label(g: Graph) -> str:
    return f"n{g.n}[" + " ".join(f"{u}-{v}" for u, v in g.edges()) + "]"


# -- campaigns -----------------------------------------------------------------

@dataclass
class Context:
    engine: Engine
    params: dict
    exact_product_cap: int = DEFAULT_EXACT_PRODUCT_CAP
    equality_cap: int = DEFAULT_EQUALITY_CAP


@dataclass(frozen=True)
class Campaign:
    id: str
    covers: tuple
    description: str
    run: Callable[[Context], list]
    defaults: dict = field(default_factory=dict)


CAMPAIGNS: dict[str, Campaign] = {}


def _campaign(cid: str, covers: Sequence[str], description: str, **defaults):
    def register(fn):
        CAMPAIGNS[cid] = Campaign(cid, tuple(covers), description, fn, defaults)
        return fn
    return register


def _exact_rows(ctx: Context, tid: str, items: Iterable[tuple[str, Graph, str, int]], rel: str = "=") -> list:
    return [solved_row(tid, inst, v, rel, target, ctx.engine.solve(g, v)) for inst, g, v, target in items]


@_campaign("tK2", ["tK2"], "thin of the complement of tK2 equals t", t=[1, 2, 3, 4])
def _tk2(ctx: Context) -> list:
    return _exact_rows(ctx, "tK2", ((f"co-{t}K2", complement_matching(t), "thin", t) for t in ctx.params["t"]))


@_campaign("tK2prop", ["tK2prop"], "pthin, indthin and indpthin of the complement of tK2 equal t", t=[1, 2, 3])
def _tk2prop(ctx: Context) -> list:
    return _exact_rows(ctx, "tK2prop", ((f"co-{t}K2", complement_matching(t), v, t)
                                        for t in ctx.params["t"] for v in ("pthin", "indthin", "indpthin")))


@_campaign("Knsq", ["Knsq", "degree", "cart"], "thin of K_n square K_n equals n", n=[2, 3], exact=[2])
def _knsq(ctx: Context) -> list:
    rows = []
    for n in ctx.params["n"]:
        g = cartesian(complete(n), complete(n))
        inst = f"K{n}xK{n}"
        lb = B.lb_neighborhood(g)
        rows.append(check_row("Knsq", inst + " lower", "thin", "=", n, lb.value, pair=lb.evidence["pair"]))
        w1 = ctx.engine.solve(complete(n), "thin").witness
        comp = compose("cartesian:thin", complete(n), w1, complete(n))
        rows.append(check_row("Knsq", inst + " witness", "thin", "=", n, comp.actual))
        if n in ctx.params["exact"]:
            rows.append(solved_row("Knsq", inst + " exact", "thin", "=", n, ctx.engine.solve(g, "thin")))
    return rows


@_campaign("KnKnn", ["KnKnn"], "thin of K_n square K_{n,n} is at least n - 1", n=[2, 3])
def _knknn(ctx: Context) -> list:
    rows = []
    for n in ctx.params["n"]:
        g = cartesian(complete(n), complete_bipartite(n, n))
        inst = f"K{n}xK{n},{n}"
        rows.append(check_row("KnKnn", inst + " lower", "thin", ">=", n - 1, B.lb_neighborhood(g).value))
        rows.append(solved_row("KnKnn", inst + " exact", "thin", ">=", n - 1, ctx.engine.solve(g, "thin")))
    return rows


@_campaign("Knsqbox", ["Knsqbox"], "thin of the strong square of K_n square K_2 is at least n + 2", n=[2], exact=[2])
def _knsqbox(ctx: Context) -> list:
    rows = []
    for n in ctx.params["n"]:
        f = cartesian(complete(n), complete(2))
        g = strong(f, f)
        inst = f"(K{n}xK2)^2"
        rows.append(check_row("Knsqbox", inst + " lower", "thin", ">=", n + 2, B.lb_neighborhood(g).value))
        if n in ctx.params["exact"]:
            rows.append(solved_row("Knsqbox", inst + " exact", "thin", ">=", n + 2, ctx.engine.solve(g, "thin")))
    return rows


@_campaign("Qn", ["Qn"], "thin of the n-cube is at least n - 2", n=[2, 3, 4, 5])
def _qn(ctx: Context) -> list:
    return [check_row("Qn", f"Q{n}", "thin", ">=", n - 2, B.lb_neighborhood(hypercube(n)).value)
            for n in ctx.params["n"]]


@_campaign("crown", ["crown", "gcrown", "hom"], "crown graphs have thinness at least n/2", n=[3, 4, 5], exact=[3, 4, 5])
def _crown(ctx: Context) -> list:
    rows = []
    for n in ctx.params["n"]:
        target = B.boxminus_target(complete(n), complete(n))
        inst = f"CR{n}"
        rows.append(fact_row("crown", inst + " shape", isomorphic(target, crown(n)), "complement of the matched K_n pair is CR_n"))
        cert = B.lb_boxminus(complete(n), complete(n))
        rows.append(check_row("gcrown", inst + " lower", "thin", "=", -(-n // 2), cert.value))
        rows.append(fact_row("gcrown", inst + " evidence", B.recheck(cert, target)))
        if n in ctx.params["exact"]:
            s = ctx.engine.solve(crown(n), "thin")
            rows.append(solved_row("crown", inst + " exact", "thin", ">=", cert.value, s))
            if n == 3:
                wit = ctx.engine.solve(complete(n), "indthin").witness
                comp = compose("hom:thin", complete(2), None, complete(n), wit)
                rows.append(fact_row("crown", inst + " hom", isomorphic(comp.graph, crown(n)), "K2 hom K_n is CR_n"))
                rows.append(solved_row("crown", inst + " sandwich", "thin", "<=", comp.actual, s))
    return rows


def _pair_label(rule: CompositionRule, g1: Graph, g2: Graph, v: Optional[int]) -> str:
    tail = f" v={v}" if v is not None else ""
    return f"{rule.name} {graph_label(g1)} {graph_label(g2)}{tail}"


def rule_rows(ctx: Context, rules: Iterable[CompositionRule], pairs: Sequence[tuple[Graph, Graph]]) -> list:
    """Witness self-certification and, within the exact cap, the exact value sandwich and equalities."""
    rows = []
    eng = ctx.engine
    for rule in rules:
        vout = rule.variant_out.name
        for g1, g2 in pairs:
            if rule.needs_complete_g2 and not g2.is_complete():
                continue
            w1 = eng.solve(g1, rule.variant_in[0]).witness if rule.variant_in[0] else None
            w2 = eng.solve(g2, rule.variant_in[1]).witness if rule.variant_in[1] else None
            for v in (range(g1.n) if rule.kind == "lex_vertex" else [None]):
                inst = _pair_label(rule, g1, g2, v)
                try:
                    comp = compose(rule, g1, w1, g2, w2, vertex=v)
                except CertificationError as exc:
                    rows.append(TheoremCheck(rule.theorem_id, inst, vout, "valid witness", "invalid", "fail",
                                             0.0, {"error": str(exc)}))
                    continue
                rows.append(check_row(rule.theorem_id, inst + " witness", vout, "<=", comp.nominal, comp.actual))
                eq = rule.is_equality(g1, g2)
                if comp.graph.n > (ctx.equality_cap if eq else ctx.exact_product_cap):
                    if eq:
                        rows.append(TheoremCheck(rule.theorem_id, inst + " equality", vout, f"= {comp.nominal}",
                                                 "n/a", "skip", 0.0, {"reason": "product above exact cap"}))
                    continue
                s = eng.solve(comp.graph, rule.variant_out)
                rows.append(solved_row(rule.theorem_id, inst + " exact", vout, "<=", comp.actual, s))
                if eq:
                    rows.append(solved_row(rule.theorem_id, inst + " equality", vout, "=", comp.nominal, s))
    return rows


def pair_corpus(max_n: int) -> list[tuple[Graph, Graph]]:
    gs = graphs_up_to(max_n)
    return list(cartesian_pairs(gs, gs))


def _rules_for(tid: str, variants: Optional[Sequence[str]]) -> list[CompositionRule]:
    out = [r for r in rule_catalog() if r.theorem_id == tid]
    if variants:
        out = [r for r in out if r.variant_out.name in variants]
    return out


def _rule_campaign(tid: str, description: str, extra: Optional[Callable[[Context], list]] = None, max_n: int = 4):
    def run(ctx: Context) -> list:
        rows = rule_rows(ctx, _rules_for(tid, ctx.params.get("variants")), pair_corpus(ctx.params["max_n"]))
        if extra is not None:
            rows += extra(ctx)
        return rows
    CAMPAIGNS[tid] = Campaign(tid, (tid,), description, run, {"max_n": max_n, "variants": None})


def _join_spot(ctx: Context) -> list:
    g = join(cycle(4), empty(2))
    t = ctx.engine.value(cycle(4), "thin")
    return [solved_row("join", "C4 join 2K1", "thin", "=", (t or 0) + 1, ctx.engine.solve(g, "thin"), base=t)]


_rule_campaign("union", "max law for thin and pthin of disjoint unions")
_rule_campaign("union-ind", "max law for indthin and indpthin of disjoint unions")
_rule_campaign("union-comp", "sum law for compthin and comppthin of disjoint unions")
_rule_campaign("join2", "thin of a join of non-complete graphs is the sum")
_rule_campaign("join", "join upper bounds and join with a complete graph", _join_spot)
_rule_campaign("join-ind", "sum law for indthin and indpthin of joins")
_rule_campaign("join-comp", "join upper bounds for complete thinness")
_rule_campaign("lexv", "substituting a graph for a vertex")
_rule_campaign("lex", "lexicographic product upper bounds and complete second factor equality")
_rule_campaign("cart", "Cartesian product upper bounds")
_rule_campaign("direct", "direct product upper bounds")
_rule_campaign("strong", "strong product upper bounds and complete second factor equality")
_rule_campaign("conorm", "co-normal product upper bounds")
_rule_campaign("homo", "homomorphic product upper bounds")
_rule_campaign("hom", "hom product upper bounds")


@_campaign("joinp", ["joinp"], "pthin of 3P3 joined with K_1")
def _joinp(ctx: Context) -> list:
    p3 = path(3)
    g = join(union(union(p3, p3), p3), complete(1))
    t = ctx.engine.value(p3, "pthin")
    return [solved_row("joinp", "3P3 join K1", "pthin", "=", (t or 0) + 1, ctx.engine.solve(g, "pthin"), base=t)]


@_campaign("pthin-indpthin", ["pthin-indpthin"], "pthin of G lex tK_1 equals indpthin of G", max_n=3, t=3, q=[1, 2])
def _pthin_indpthin(ctx: Context) -> list:
    rows = []
    t = ctx.params["t"]
    for g in graphs_up_to(ctx.params["max_n"]):
        base = ctx.engine.value(g, "indpthin")
        h = lex(g, empty(t))
        inst = f"{graph_label(g)} lex {t}K1"
        rows.append(solved_row("pthin-indpthin", inst, "pthin", "=", base, ctx.engine.solve(h, "pthin")))
        for q in ctx.params["q"]:
            hq = join(h, empty(q))
            rows.append(solved_row("pthin-indpthin", f"{inst} join {q}K1", "pthin", "=", base + 1,
                                   ctx.engine.solve(hq, "pthin")))
    return rows


@_campaign("oracle", ["oracle"], "branch and bound agrees with brute force on small graphs",
           max_n=5, random_count=50, random_n=6, seed=2024, variants=None)
def _oracle(ctx: Context) -> list:
    p = ctx.params
    graphs = [(graph_label(g), g) for g in graphs_up_to(p["max_n"])]
    graphs += [(f"random{i} {graph_label(g)}", g) for i, g in enumerate(random_corpus(p["random_count"], p["random_n"], seed=p["seed"]))]
    rows = []
    for inst, g in graphs:
        for name in p["variants"] or VARIANTS:
            truth = brute_force_oracle(g, name)
            rows.append(solved_row("oracle", inst, name, "=", truth, ctx.engine.solve(g, name)))
    return rows


@_campaign("identities", ["identities"], "product identities", max_n=4)
def _identities(ctx: Context) -> list:
    rows = []
    for n in (3, 4):
        rows.append(fact_row("identities", f"K{n} direct K2", isomorphic(direct(complete(n), complete(2)), crown(n)), "is CR_n"))
    for t in (2, 3):
        rows.append(fact_row("identities", f"K{t} conormal 2K1",
                             isomorphic(conormal(complete(t), empty(2)), complement_matching(t)), "is co-tK2"))
    gs = graphs_up_to(ctx.params["max_n"])
    for g in gs:
        rows.append(fact_row("identities", f"{graph_label(g)} hom K1", hom(g, complete(1)) == complement(g), "is complement"))
    for g1, g2 in cartesian_pairs(gs, gs):
        inst = f"{graph_label(g1)} {graph_label(g2)}"
        rows.append(fact_row("identities", inst + " hom", hom(g1, g2) == complement(homomorphic(g1, g2)),
                             "is complement of homomorphic"))
        rows.append(fact_row("identities", inst + " conormal",
                             complement(conormal(g1, g2)) == strong(complement(g1), complement(g2)),
                             "complement is strong of complements"))
    return rows


@_campaign("grid-bv", ["peak", "grid"], "isoperimetric peak of the r by r grid is at least r", r=[2, 3])
def _grid_bv(ctx: Context) -> list:
    rows = []
    for r in ctx.params["r"]:
        g = grid(r)
        bv, s, _ = isoperimetric_peak(g, cap=None)
        rows.append(check_row("peak", f"GR{r}", "-", ">=", r, bv, size=s))
        cert = B.lb_isoperimetric(g, cap=None)
        rows.append(fact_row("peak", f"GR{r} evidence", B.recheck(cert, g)))
    return rows


@_campaign("lexhom", ["lexhom"], "contracting a homogeneous set bounds thin by the sum of the parts", max_n=5)
def _lexhom(ctx: Context) -> list:
    rows = []
    for g in graphs_up_to(ctx.params["max_n"], minimum=3):
        for h in homogeneous_sets(g):
            quotient, _, _ = contract(g, h)
            sub = induced_subgraph(g, [v for v in range(g.n) if h >> v & 1])
            sq, sh = ctx.engine.solve(quotient, "thin"), ctx.engine.solve(sub, "thin")
            w = compose_homogeneous(g, h, "lexv-sum:thin", sq.witness, sh.witness)
            inst = f"{graph_label(g)} H={h:b}"
            rows.append(check_row("lexhom", inst + " witness", "thin", "<=", sq.value + sh.value, w.value))
            rows.append(solved_row("lexhom", inst + " exact", "thin", "<=", sq.value + sh.value,
                                   ctx.engine.solve(g, "thin")))
    return rows


# -- growth demonstrations for the non-existence corollaries -------------------

@dataclass(frozen=True)
class GrowthFamily:
    label: str
    sizes: tuple
    build: Callable[[int], tuple]  # size -> (G1, G2, product)
    params: tuple  # (name, which factor, variant or "order")
    measure: str = "exact"  # "exact" or the theorem id of a certificate


def _measure(ctx: Context, fam: GrowthFamily, g1: Graph, g2: Graph, prod: Graph, kind: str):
    if fam.measure == "exact":
        s = ctx.engine.solve(prod, "thin")
        return (s.value if s.exact else None), s.millis
    if fam.measure == "degree":
        return B.lb_neighborhood(prod).value, 0.0
    for c in B.lb_product_suite(kind, g1, g2):
        if c.theorem_id == fam.measure and c.applicable:
            return c.value, 0.0
    return None, 0.0


def growth_rows(ctx: Context, tid: str, kind: str, fam: GrowthFamily) -> list:
    rows = []
    first: dict = {}
    prev = None
    for size in fam.sizes:
        g1, g2, prod = fam.build(size)
        inst = f"{fam.label} size={size}"
        for name, which, variant in fam.params:
            g = g1 if which == 1 else g2
            value = g.n if variant == "order" else ctx.engine.value(g, variant)
            first.setdefault(name, value)
            rows.append(check_row(tid, f"{inst} {name}", variant, "=", first[name], value, family=fam.label, size=size))
        value, millis = _measure(ctx, fam, g1, g2, prod, kind)
        how = "exact" if fam.measure == "exact" else f"certificate {fam.measure}"
        if prev is None:
            rows.append(check_row(tid, f"{inst} thin", "thin", ">=", 1, value, millis, family=fam.label,
                                  size=size, measure=how, value=value))
        else:
            rows.append(check_row(tid, f"{inst} thin", "thin", ">", prev, value, millis, family=fam.label,
                                  size=size, measure=how, value=value))
        prev = value if value is not None else prev
    return rows


def _kk(n: int) -> Graph:
    return cartesian(complete(n), complete(2))


GROWTH: dict[str, tuple[str, list[GrowthFamily]]] = {
    "nblex": ("lex", [GrowthFamily("K_t lex 2K1", (1, 2, 3), lambda t: (complete(t), empty(2), lex(complete(t), empty(2))),
                                   (("comppthin(G1)", 1, "comppthin"), ("|V(G2)|", 2, "order")))]),
    "nbcart": ("cartesian", [GrowthFamily("P_2s cart P_2s", (1, 2, 3),
                                          lambda s: (path(2 * s), path(2 * s), cartesian(path(2 * s), path(2 * s))),
                                          (("indpthin(G1)", 1, "indpthin"), ("indpthin(G2)", 2, "indpthin")))]),
    "nbcart2": ("cartesian", [GrowthFamily("K_n cart K_n", (2, 3, 4),
                                           lambda n: (complete(n), complete(n), cartesian(complete(n), complete(n))),
                                           (("comppthin(G1)", 1, "comppthin"), ("comppthin(G2)", 2, "comppthin")))]),
    "nbcart3": ("cartesian", [GrowthFamily("K_n cart K_n,n", (2, 3, 4),
                                           lambda n: (complete(n), complete_bipartite(n, n),
                                                      cartesian(complete(n), complete_bipartite(n, n))),
                                           (("comppthin(G1)", 1, "comppthin"), ("indpthin(G2)", 2, "indpthin")))]),
    "nbdirect": ("direct", [GrowthFamily("K_n direct K2", (3, 4, 5),
                                         lambda n: (complete(n), complete(2), direct(complete(n), complete(2))),
                                         (("comppthin(G1)", 1, "comppthin"), ("|V(G2)|", 2, "order")))]),
    "nbdirect2": ("direct", [GrowthFamily("P_2s direct P_2s", (1, 2, 3),
                                          lambda s: (path(2 * s), path(2 * s), direct(path(2 * s), path(2 * s))),
                                          (("indpthin(G1)", 1, "indpthin"), ("indpthin(G2)", 2, "indpthin")))]),
    "nbstrong": ("strong", [GrowthFamily("P_(2r-1) strong P_(2r-1)", (2, 3, 4),
                                         lambda r: (path(2 * r - 1), path(2 * r - 1), strong(path(2 * r - 1), path(2 * r - 1))),
                                         (("indpthin(G1)", 1, "indpthin"), ("indpthin(G2)", 2, "indpthin")))]),
    "nbstrong2": ("strong", [GrowthFamily("(K_n cart K2) strong (K_n cart K2)", (3, 4, 5),
                                          lambda n: (_kk(n), _kk(n), strong(_kk(n), _kk(n))),
                                          (("comppthin(G1)", 1, "comppthin"), ("comppthin(G2)", 2, "comppthin")),
                                          "degree")]),
    "nbconorm": ("conormal", [GrowthFamily("K_t conormal 2K1", (1, 2, 3),
                                           lambda t: (complete(t), empty(2), conormal(complete(t), empty(2))),
                                           (("comppthin(G1)", 1, "comppthin"), ("|V(G2)|", 2, "order")))]),
    "nbconorm2": ("conormal", [GrowthFamily("tK2 conormal tK2", (2, 3, 4),
                                            lambda t: (matching(t), matching(t), conormal(matching(t), matching(t))),
                                            (("indpthin(G1)", 1, "indpthin"), ("indpthin(G2)", 2, "indpthin")),
                                            "lowerconorm2")]),
    "nbmodular": ("modular", [
        GrowthFamily("K_n modular K2", (3, 4, 5), lambda n: (complete(n), complete(2), modular(complete(n), complete(2))),
                     (("comppthin(G1)", 1, "comppthin"), ("|V(G2)|", 2, "order"))),
        GrowthFamily("tK2 modular K1", (1, 2, 3), lambda t: (matching(t), complete(1), modular(matching(t), complete(1))),
                     (("indpthin(G1)", 1, "indpthin"), ("|V(G2)|", 2, "order"))),
    ]),
    "nbhomo": ("homomorphic", [
        GrowthFamily("K2 homomorphic tK2", (1, 2, 3), lambda t: (complete(2), matching(t), homomorphic(complete(2), matching(t))),
                     (("|V(G1)|", 1, "order"), ("indpthin(G2)", 2, "indpthin")), "lowerhomo"),
        GrowthFamily("K2 homomorphic (K_t cart K2)", (2, 3, 4), lambda t: (complete(2), _kk(t), homomorphic(complete(2), _kk(t))),
                     (("|V(G1)|", 1, "order"), ("comppthin(G2)", 2, "comppthin"))),
    ]),
    "nbhom": ("hom", [
        GrowthFamily("K2 hom K_n", (3, 4, 5), lambda n: (complete(2), complete(n), hom(complete(2), complete(n))),
                     (("|V(G1)|", 1, "order"), ("comppthin(G2)", 2, "comppthin"))),
        GrowthFamily("tK2 hom K1", (1, 2, 3), lambda t: (matching(t), complete(1), hom(matching(t), complete(1))),
                     (("indpthin(G1)", 1, "indpthin"), ("|V(G2)|", 2, "order"))),
        GrowthFamily("(K_n cart K2) hom K1", (3, 4, 5), lambda n: (_kk(n), complete(1), hom(_kk(n), complete(1))),
                     (("comppthin(G1)", 1, "comppthin"), ("|V(G2)|", 2, "order"))),
    ]),
}


def _growth_campaign(tid: str) -> None:
    kind, fams = GROWTH[tid]

    def run(ctx: Context) -> list:
        rows = []
        for fam in fams:
            rows += growth_rows(ctx, tid, kind, fam)
        return rows
    CAMPAIGNS[f"{tid}-growth"] = Campaign(f"{tid}-growth", (tid,), f"growth demonstration for {kind} products", run)


for _tid in GROWTH:
    _growth_campaign(_tid)


# -- bounds sandwich -----------------------------------------------------------

def _sandwich_graph_rows(ctx: Context, inst: str, g: Graph) -> list:
    rows = []
    exact = {v: ctx.engine.value(g, v) for v in ("thin", "indthin", "compthin")}
    certs = B.all_certificates(g)
    if g.n >= 3:
        low = min(range(g.n), key=lambda v: (g.degree(v), v))
        certs.append(B.lb_neighborhood(g, [v for v in range(g.n) if v != low]))
    for c in certs:
        if not c.applicable:
            continue
        # lower certificates bound thin, upper ones the variant they were proved for
        if c.direction == "lower":
            row = check_row(c.theorem_id, inst, "thin", ">=", c.value, exact["thin"], direction="lower")
        else:
            row = check_row(c.theorem_id, inst, c.variant, "<=", c.value, exact[c.variant], direction="upper")
        if not B.recheck(c, g):
            row.verdict = "fail"
            row.detail["evidence"] = "does not re-check"
        rows.append(row)
    return rows


@_campaign("sandwich", list(B.SINGLE_GRAPH_BOUNDS) + list(B.PRODUCT_BOUNDS),
           "every certificate lies on the right side of the exact value",
           max_n=5, random_count=20, random_n=7, seed=7, pair_max_n=3, boxminus_max_n=3)
def _sandwich(ctx: Context) -> list:
    p = ctx.params
    rows = []
    for g in graphs_up_to(p["max_n"]):
        rows += _sandwich_graph_rows(ctx, graph_label(g), g)
    for i, g in enumerate(random_corpus(p["random_count"], p["random_n"], seed=p["seed"])):
        rows += _sandwich_graph_rows(ctx, f"random{i} {graph_label(g)}", g)
    # boxminus lower bound on matched pairs of equal order
    for n in range(1, p["boxminus_max_n"] + 1):
        gs = [g for g in graphs_up_to(n) if g.n == n]
        for g1, g2 in cartesian_pairs(gs, gs):
            for f in (list(range(n)), list(range(1, n)) + [0]):
                target = B.boxminus_target(g1, g2, f)
                c = B.lb_boxminus(g1, g2, f)
                inst = f"{graph_label(g1)} {graph_label(g2)} f={f}"
                row = solved_row("gcrown", inst, "thin", ">=", c.value, ctx.engine.solve(target, "thin"))
                if not B.recheck(c, target):
                    row.verdict = "fail"
                rows.append(row)
    # product lower bounds
    gs = graphs_up_to(p["pair_max_n"])
    for kind in PAIR_KINDS:
        for g1, g2 in cartesian_pairs(gs, gs):
            prod = apply_product(kind, g1, g2)
            if prod.n > 9:
                continue
            s = ctx.engine.solve(prod, "thin")
            for c in B.lb_product_suite(kind, g1, g2):
                if c.applicable:
                    inst = f"{kind} {graph_label(g1)} {graph_label(g2)}"
                    rows.append(solved_row(c.theorem_id, inst, "thin", ">=", c.value, s))
    return rows


# -- running -------------------------------------------------------------------

def theorem_index() -> dict[str, list[str]]:
    """theorem id -> campaign ids that exercise it."""
    out: dict[str, list[str]] = {}
    for c in CAMPAIGNS.values():
        for tid in c.covers:
            out.setdefault(tid, []).append(c.id)
    return out


def _context(campaign: Campaign, engine: Engine, overrides: Optional[dict], caps: Optional[dict] = None) -> Context:
    params = dict(campaign.defaults)
    for k, v in (overrides or {}).items():
        if k not in params:
            raise ConfigError(f"campaign {campaign.id!r} has no parameter {k!r}; known: {sorted(params)}")
        params[k] = v
    caps = caps or {}
    return Context(engine, params, caps.get("exact_product", DEFAULT_EXACT_PRODUCT_CAP),
                   caps.get("equality", DEFAULT_EQUALITY_CAP))


def verify_theorem(theorem_id: str, corpus: Optional[dict] = None, engine: Optional[Engine] = None,
                   caps: Optional[dict] = None) -> list[TheoremCheck]:
    """Run the campaign named ``theorem_id`` (or every campaign covering it).

    ``corpus`` overrides the campaign's instance parameters, for example
    ``{"t": [1, 2]}`` for the tK2 campaign.
    """
    engine = engine or Engine()
    if theorem_id in CAMPAIGNS:
        ids = [theorem_id]
    else:
        ids = theorem_index().get(theorem_id)
        if not ids:
            raise ConfigError(f"unknown theorem id {theorem_id!r}")
    rows: list[TheoremCheck] = []
    for cid in ids:
        camp = CAMPAIGNS[cid]
        rows += camp.run(_context(camp, engine, corpus if cid == theorem_id or len(ids) == 1 else None, caps))
    return rows


@dataclass
class Report:
    rows: list
    config: dict

    def sorted_rows(self) -> list:
        return sorted(self.rows, key=lambda r: (r.theorem_id, r.instance))

    def summary(self) -> dict:
        out: dict = {}
        for r in self.rows:
            d = out.setdefault(r.theorem_id, {"pass": 0, "fail": 0, "skip": 0})
            d[r.verdict] += 1
        return {k: out[k] for k in sorted(out)}

    @property
    def failed(self) -> bool:
        return any(r.verdict == "fail" for r in self.rows)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.sorted_rows():
            w.writerow(r.row())
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({"engine": ENGINE_VERSION, "config": self.config, "summary": self.summary(),
                           "rows": [r.to_dict() for r in self.sorted_rows()]}, indent=1, sort_keys=True)


CONFIG_KEYS = {"campaigns", "timeout", "params", "caps", "cache"}
CAP_KEYS = {"exact_product", "equality"}


def load_config(source: Union[str, Path, dict, None]) -> dict:
    """Parse and validate a run config; errors carry the file position where possible."""
    if source is None:
        data: Any = {}
    elif isinstance(source, dict):
        data = source
    else:
        path = Path(source)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"{path}: cannot read config: {exc}") from exc
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(data) - CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys {sorted(unknown)}; known: {sorted(CONFIG_KEYS)}")
    campaigns = data.get("campaigns", "all")
    if campaigns == "all":
        campaigns = list(CAMPAIGNS)
    if not isinstance(campaigns, list):
        raise ConfigError("'campaigns' must be a list of ids or \"all\"")
    for cid in campaigns:
        if cid not in CAMPAIGNS:
            raise ConfigError(f"unknown theorem id {cid!r} in 'campaigns'")
    params = data.get("params", {})
    if not isinstance(params, dict):
        raise ConfigError("'params' must map campaign ids to parameter objects")
    for cid, over in params.items():
        if cid not in CAMPAIGNS:
            raise ConfigError(f"unknown theorem id {cid!r} in 'params'")
        if not isinstance(over, dict):
            raise ConfigError(f"'params.{cid}' must be an object")
        _context(CAMPAIGNS[cid], Engine(), over)
    caps = data.get("caps", {})
    if not isinstance(caps, dict) or set(caps) - CAP_KEYS:
        raise ConfigError(f"'caps' must be an object with keys among {sorted(CAP_KEYS)}")
    for k, v in caps.items():
        if not isinstance(v, int) or v < 1:
            raise ConfigError(f"cap {k!r} must be a positive integer")
    timeout = data.get("timeout", DEFAULT_TIMEOUT)
    if timeout is not None and (not isinstance(timeout, (int, float)) or timeout <= 0 or math.isnan(timeout)):
        raise ConfigError("'timeout' must be a positive number of seconds or null")
    return {"campaigns": campaigns, "timeout": timeout, "params": params,
            "caps": {"exact_product": caps.get("exact_product", DEFAULT_EXACT_PRODUCT_CAP),
                     "equality": caps.get("equality", DEFAULT_EQUALITY_CAP)},
            "cache": data.get("cache")}


def run_corpus(config: Union[str, Path, dict, None] = None, cache: Optional[ResultCache] = None,
               csv_path: Union[str, Path, None] = None, json_path: Union[str, Path, None] = None,
               progress: Optional[Callable[[str, float], None]] = None) -> Report:
    cfg = load_config(config)
    if cache is None:
        cache = ResultCache(cfg["cache"]) if cfg["cache"] else ResultCache()
    engine = Engine(cache, cfg["timeout"])
    rows: list = []
    for cid in cfg["campaigns"]:
        camp = CAMPAIGNS[cid]
        start = time.monotonic()
        rows += camp.run(_context(camp, engine, cfg["params"].get(cid), cfg["caps"]))
        if progress is not None:
            progress(cid, time.monotonic() - start)
    report = Report(rows, {k: cfg[k] for k in ("campaigns", "timeout", "params", "caps")})
    if csv_path is not None:
        Path(csv_path).write_text(report.to_csv(), encoding="utf-8")
    if json_path is not None:
        Path(json_path).write_text(report.to_json(), encoding="utf-8")
    return report


def load_graph_file(path: Union[str, Path]) -> Graph:
    text = Path(path).read_text(encoding="utf-8")
    return Graph.from_dot(text) if str(path).endswith(".dot") else Graph.from_json(text)

