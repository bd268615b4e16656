"""Command-line entry point: ``thinness <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import bounds as B
from .constructions import compose, get_rule, rule_catalog
from .errors import ParameterError, ThinnessError
from .families import FAMILY_NAMES, family
from .graph import Graph
from .harness import CAMPAIGNS, CACHE_ENV, ResultCache, load_config, run_corpus
from .products import PRODUCT_KINDS, ProductKind, apply_product
from .report import render
from .representation import VARIANTS
from .solver import ThinWitness, brute_force_oracle, exact_value


def _read_graph(path: str) -> Graph:
    text = Path(path).read_text(encoding="utf-8")
    return Graph.from_dot(text) if path.endswith(".dot") else Graph.from_json(text)


def _read_witness(path: Optional[str]) -> Optional[ThinWitness]:
    if path is None:
        return None
    return ThinWitness.from_json(Path(path).read_text(encoding="utf-8"))


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _param(s: str) -> tuple[str, int]:
    key, sep, value = s.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected key=value, got {s!r}")
    try:
        return key, int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"parameter {key} must be an integer") from None


def cmd_family(args) -> int:
    g = family(args.name, **dict(args.params))
    _emit(g.to_dot() if args.format == "dot" else g.to_json(), args.output)
    return 0


def cmd_product(args) -> int:
    kind = ProductKind(args.kind, args.vertex)
    g = apply_product(kind, _read_graph(args.g1), _read_graph(args.g2))
    _emit(g.to_json(), args.output)
    return 0


def cmd_thin(args) -> int:
    g = _read_graph(args.graph)
    if args.oracle:
        print(json.dumps({"variant": args.variant, "value": brute_force_oracle(g, args.variant)}))
        return 0
    res = exact_value(g, args.variant, timeout=args.timeout, prune=not args.no_prune)
    print(json.dumps(res.to_dict(), indent=1))
    if args.witness:
        Path(args.witness).write_text(res.witness.to_json() + "\n", encoding="utf-8")
    return 0


def cmd_bounds(args) -> int:
    g = _read_graph(args.graph)
    certs = B.all_certificates(g)
    keep = [c for c in certs if not c.applicable or c.bounds_variant(args.variant)]
    print(json.dumps([c.to_dict() for c in keep], indent=1))
    return 0


def cmd_witness(args) -> int:
    rule = get_rule(args.rule)
    g1, g2 = _read_graph(args.g1), _read_graph(args.g2)
    w1, w2 = _read_witness(args.w1), _read_witness(args.w2)
    # rules that only use an ordering of a factor take it from the witness file
    if rule.variant_in[0] is None and w1 is not None:
        w1 = w1.verify(g1).ordering
    if rule.variant_in[1] is None and w2 is not None:
        w2 = w2.verify(g2).ordering
    comp = compose(rule, g1, w1, g2, w2, vertex=args.vertex)
    if args.out_graph:
        Path(args.out_graph).write_text(comp.graph.to_json() + "\n", encoding="utf-8")
    if args.out_witness:
        Path(args.out_witness).write_text(comp.witness.to_json() + "\n", encoding="utf-8")
    print(json.dumps({"rule": rule.name, "nominal": comp.nominal, "value": comp.actual,
                      "graph": comp.graph.to_dict(), "witness": comp.witness.to_dict()}))
    return 0


def cmd_verify(args) -> int:
    if args.list:
        for cid, camp in CAMPAIGNS.items():
            print(f"{cid}\t{camp.description}")
        return 0
    if args.config:
        cfg = load_config(args.config)
        if args.ids:
            raise ParameterError("give theorem ids or --config, not both")
    else:
        cfg = load_config({"campaigns": args.ids or "all"})
    if args.timeout is not None:
        cfg["timeout"] = args.timeout
    cache = ResultCache(args.cache) if args.cache else (ResultCache.memory() if args.no_cache else None)

    def progress(cid: str, secs: float) -> None:
        print(f"{cid}: {secs:.1f}s", file=sys.stderr)

    report = run_corpus(cfg, cache=cache, csv_path=args.csv, json_path=args.json,
                        progress=progress if args.verbose else None)
    for tid, c in report.summary().items():
        print(f"{tid:24s} pass={c['pass']:<6d} fail={c['fail']:<4d} skip={c['skip']}")
    return 1 if report.failed else 0


def cmd_report(args) -> int:
    for path in render(args.report, args.output):
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="thinness", description="Exact thinness, products, witnesses and bounds.")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("family", help="generate a named graph family")
    f.add_argument("name", choices=[n for n in FAMILY_NAMES if n != "boxminus"])
    f.add_argument("params", nargs="*", type=_param, help="size parameters as key=value, e.g. n=4")
    f.add_argument("--format", choices=("json", "dot"), default="json")
    f.add_argument("-o", "--output")
    f.set_defaults(func=cmd_family)

    pr = sub.add_parser("product", help="apply a binary graph operation")
    pr.add_argument("--kind", required=True, choices=PRODUCT_KINDS)
    pr.add_argument("g1")
    pr.add_argument("g2")
    pr.add_argument("-v", "--vertex", type=int, help="substituted vertex for lex_vertex")
    pr.add_argument("-o", "--output")
    pr.set_defaults(func=cmd_product)

    t = sub.add_parser("thin", help="exact value of a thinness variant")
    t.add_argument("graph")
    t.add_argument("--variant", default="thin", choices=list(VARIANTS))
    t.add_argument("--timeout", type=float, help="seconds before returning the best bounds found")
    t.add_argument("--no-prune", action="store_true", help="enumerate every ordering instead of searching")
    t.add_argument("--oracle", action="store_true", help="brute force over partitions and orderings")
    t.add_argument("--witness", help="write the optimal witness to this file")
    t.set_defaults(func=cmd_thin)

    b = sub.add_parser("bounds", help="certified lower and upper bounds")
    b.add_argument("graph")
    b.add_argument("--variant", default="thin", choices=list(VARIANTS))
    b.set_defaults(func=cmd_bounds)

    w = sub.add_parser("witness", help="build a product witness from factor witnesses")
    w.add_argument("--rule", required=True, choices=[r.name for r in rule_catalog()], metavar="RULE")
    w.add_argument("--g1", required=True)
    w.add_argument("--w1")
    w.add_argument("--g2", required=True)
    w.add_argument("--w2")
    w.add_argument("--vertex", type=int, help="substituted vertex for lex_vertex rules")
    w.add_argument("--out-graph")
    w.add_argument("--out-witness")
    w.set_defaults(func=cmd_witness)

    v = sub.add_parser("verify", help="run theorem verification campaigns")
    v.add_argument("ids", nargs="*", help="campaign ids (default: all)")
    v.add_argument("--config", help="JSON run config")
    v.add_argument("--csv")
    v.add_argument("--json")
    v.add_argument("--timeout", type=float)
    v.add_argument("--cache", help=f"cache file (default: ${CACHE_ENV} or ~/.cache/thinness/results.jsonl)")
    v.add_argument("--no-cache", action="store_true", help="keep results in memory only")
    v.add_argument("--list", action="store_true", help="list campaign ids and exit")
    v.add_argument("--verbose", action="store_true")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("report", help="summary table and figures from a JSON report")
    r.add_argument("report")
    r.add_argument("-o", "--output", default="report")
    r.set_defaults(func=cmd_report)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ThinnessError, OSError, json.JSONDecodeError) as exc:
        print(f"thinness: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
