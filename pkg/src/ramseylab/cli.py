"""Command-line front end.

Subcommands: density, threshold, ramsey-check, construct, scan, facts,
replay.  Results print as JSON (or CSV for scans) and can be written
with --out.  Exit codes: 0 success, 2 inconclusive or uncovered,
1 error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from . import graph6
from .coloring import (INCONCLUSIVE, NOT_RAMSEY, decide_ramsey, export_cnf,
                       ramsey_query, verify_coloring)
from .constructions import (ConstructionError, bipartite_decomposition,
                            clique_split_coloring, lift_coloring,
                            odd_cycle_free_multicoloring, turan_blue_composite,
                            _part_offsets)
from .densities import d2, m2, m2_asym, mu0, mu1, rho, rho_k_with_partition
from .experiments import (ManifestError, PACKAGE_VERSION, parse_pattern,
                          parse_targets, replay, run_experiment)
from .graphs import Graph, build_family, clique_graph
from .perturb import log_spaced_grid
from .thresholds import UNKNOWN, threshold_oracle

OK, ERROR, UNDECIDED = 0, 1, 2


def _frac(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _graph_arg(text: str) -> Graph:
    """A host graph: family descriptor when it has a ':', else graph6."""
    if ":" in text:
        return build_family(text)
    return graph6.decode(text)


def _grid_arg(text: str) -> list[float]:
    """Probability grid: 'lo:hi[:per_decade]' log spaced, or 'a,b,c'."""
    if ":" in text:
        pieces = text.split(":")
        per_decade = int(pieces[2]) if len(pieces) > 2 else 13
        return log_spaced_grid(float(pieces[0]), float(pieces[1]), per_decade)
    return [float(tok) for tok in text.split(",") if tok]


def _rows_to_csv(rows: list[dict]) -> str:
    import csv
    import io

    fields: list[str] = []
    for row in rows:
        fields.extend(k for k in row if k not in fields)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields)
    writer.writeheader()
    for row in rows:
        writer.writerow({k: json.dumps(v) if isinstance(v, (dict, list)) else v
                         for k, v in row.items()})
    return buf.getvalue()


def _emit(payload, args, default_name: Optional[str] = None) -> None:
    if isinstance(payload, str):
        text = payload
    elif (getattr(args, "format", "json") == "csv" and isinstance(payload, list)
          and all(isinstance(row, dict) for row in payload)):
        text = _rows_to_csv(payload)
    else:
        text = json.dumps(payload, indent=2) + "\n"
    out = getattr(args, "out", None) or default_name
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_density(args) -> int:
    if args.m2 is not None:
        g = graph6.decode(args.m2)
        payload = {"op": "m2", "graph": args.m2, "value": _frac(m2(g))}
    elif args.m2_asym is not None:
        g1, g2 = (graph6.decode(tok) for tok in args.m2_asym)
        payload = {"op": "m2_asym", "graphs": list(args.m2_asym),
                   "value": _frac(m2_asym(g1, g2))}
    elif args.d2 is not None:
        payload = {"op": "d2", "graph": args.d2,
                   "value": _frac(d2(graph6.decode(args.d2)))}
    elif args.rho is not None:
        payload = {"op": "rho", "graph": args.rho,
                   "value": _frac(rho(graph6.decode(args.rho)))}
    elif args.rho_k is not None:
        code, k = args.rho_k
        value, parts = rho_k_with_partition(graph6.decode(code), int(k))
        payload = {"op": "rho_k", "graph": code, "k": int(k),
                   "value": _frac(value),
                   "partition": [sorted(part) for part in parts]}
    else:
        code, n_text, p_text = args.mu
        g = graph6.decode(code)
        n, p = int(n_text), Fraction(p_text)
        payload = {"op": "mu", "graph": code, "n": n, "p": _frac(p),
                   "mu0": _frac(mu0(g, n, p)), "mu1": _frac(mu1(g, n, p))}
    _emit(payload, args)
    return OK


def _cmd_threshold(args) -> int:
    patterns = []
    for tok in args.patterns.split(","):
        pats = [parse_pattern(t) for t in tok.split("+")]
        if len(pats) != 1:
            raise ManifestError("the threshold oracle takes one pattern per color")
        patterns.append(pats[0])
    answer = threshold_oracle(patterns, Fraction(args.density))
    payload = answer.to_jsonable()
    payload["patterns"] = [p.describe() for p in patterns]
    payload["density"] = _frac(Fraction(args.density))
    _emit(payload, args)
    return UNDECIDED if answer.kind == UNKNOWN else OK


def _build_query(args):
    host = _graph_arg(args.host)
    if args.targets:
        targets = parse_targets(args.targets)
    else:
        if not (args.red and args.blue):
            raise ManifestError("need --red and --blue, or --targets")
        targets = [[parse_pattern(t) for t in args.red.split("+")],
                   [parse_pattern(t) for t in args.blue.split("+")]]
    forbidden = None
    if args.forbid:
        with open(args.forbid, encoding="utf-8") as fh:
            forbidden = json.load(fh)
    return ramsey_query(host, targets, forbidden,
                        node_budget=args.budget_nodes,
                        time_budget=args.budget_secs)


def _cmd_ramsey_check(args) -> int:
    query = _build_query(args)
    if args.cnf:
        doc = export_cnf(query)
        with open(args.cnf, "w", encoding="utf-8") as fh:
            fh.write(doc.dimacs())
    verdict = decide_ramsey(query)
    payload = {"host_vertices": query.host.n, "host_edges": len(query.host.edges()),
               "status": verdict.status,
               "nodes": verdict.stats.nodes, "elapsed": round(verdict.stats.elapsed, 4)}
    if verdict.witness is not None:
        payload["witness"] = verdict.witness.to_jsonable()
        payload["witness_violations"] = len(verify_coloring(verdict.witness, query))
    if args.cnf:
        payload["cnf"] = args.cnf
    _emit(payload, args)
    return UNDECIDED if verdict.status == INCONCLUSIVE else OK


def _coloring_payload(coloring, checks: dict) -> dict:
    return {"coloring": coloring.to_jsonable(), "verified": True, "checks": checks}


def _cmd_construct(args) -> int:
    name = args.name
    if name == "bip-decomp":
        g = _graph_arg(args.family)
        classes = bipartite_decomposition(g, args.i)
        payload = {"classes": [graph6.encode(c) for c in classes],
                   "verified": True,
                   "checks": {"class_edges": [c.edge_count for c in classes],
                              "total_edges": g.edge_count}}
    elif name == "multicycle":
        coloring = odd_cycle_free_multicoloring(args.n, args.r, args.band)
        payload = _coloring_payload(coloring, {
            "colors": coloring.r,
            "odd_cycle_free": [not coloring.color_subgraph(c).has_odd_cycle()
                               for c in range(coloring.r)]})
    elif name == "lift":
        base = _find_two_coloring_avoiding_patterns(args.k, args.avoid)
        blown = _graph_arg(args.family)
        coloring = lift_coloring(base, blown)
        payload = _coloring_payload(coloring, {
            "base": base.to_jsonable(), "lifted_vertices": blown.n})
    elif name == "turan-blue":
        from .graphs import clique, empty_graph
        from .perturb import sample_gnp
        inner = []
        for idx, (at, size) in enumerate(_part_offsets(args.n, args.k)):
            part_graph = (sample_gnp(size, args.p, args.seed, trial=idx)
                          if args.p > 0 else empty_graph(size))
            verdict = decide_ramsey(ramsey_query(
                part_graph, [clique(args.t), clique(args.ell)]))
            if verdict.status != NOT_RAMSEY:
                raise ConstructionError(
                    f"no inner coloring found for part {idx} ({verdict.status})")
            inner.append(verdict.witness)
        coloring = turan_blue_composite(args.n, args.k, inner, args.t,
                                        args.ell, args.s)
        payload = _coloring_payload(coloring, {
            "parts": args.k, "avoids_red_clique": args.t,
            "avoids_blue_clique": args.s or args.k * (args.ell - 1) + 1})
    elif name == "k4-lower":
        from .perturb import sample_gnp
        rnd = sample_gnp(args.n, args.p, args.seed)
        a_size = args.a_size if args.a_size is not None else args.n // 2
        ab = (list(range(a_size)), list(range(a_size, args.n)))
        coloring = clique_split_coloring(args.n, args.k, args.s, args.t, ab, rnd)
        payload = _coloring_payload(coloring, {
            "a_size": a_size, "random_edges": rnd.edge_count,
            "avoids_red_clique": args.t, "avoids_blue_clique": args.s})
    else:
        raise ManifestError(f"unknown construction {name!r}")
    _emit(payload, args)
    return OK


def _find_two_coloring_avoiding_patterns(k: int, avoid: str):
    targets = parse_targets(avoid)
    verdict = decide_ramsey(ramsey_query(clique_graph(k), targets))
    if verdict.status != NOT_RAMSEY:
        raise ConstructionError(
            f"K_{k} admits no coloring avoiding {avoid} ({verdict.status})")
    return verdict.witness


def _cmd_scan(args) -> int:
    manifest = {
        "op": "scan",
        "args": {"bases": args.base, "targets": args.targets
                 or f"{args.red},{args.blue}",
                 "p_grid": _grid_arg(args.p_grid), "trials": args.trials,
                 "node_budget": args.budget_nodes,
                 "time_budget": args.budget_secs},
        "out": args.out or "results.csv",
    }
    if args.seed is not None:
        manifest["seed"] = args.seed
    result = run_experiment(manifest)
    bases = [build_family(b) for b in manifest["args"]["bases"]]
    scan_summary = {"out": result["out"], "manifest": result["manifest"],
                    "seed": result["resolved"]["seed"],
                    "sizes": [g.n for g in bases]}
    sys.stdout.write(json.dumps(scan_summary, indent=2) + "\n")
    return OK


def _cmd_facts(args) -> int:
    from . import facts as facts_mod
    from .experiments import _fact_report
    if args.only:
        extra = {}
        if args.fact_args:
            extra = json.loads(args.fact_args)
        reports = [_fact_report(args.only, extra)]
    else:
        reports = facts_mod.default_fact_suite()
    payload = [r.to_jsonable() for r in reports]
    _emit(payload if len(payload) > 1 else payload[0], args)
    statuses = {r.status for r in reports}
    if "refuted" in statuses:
        return ERROR
    if INCONCLUSIVE in statuses:
        return UNDECIDED
    return OK


def _cmd_replay(args) -> int:
    report = replay(args.manifest)
    _emit(report, args)
    return OK if report["identical"] else ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ramseylab",
        description="Ramsey properties of randomly perturbed dense graphs: "
                    "exact small-case search, density calculus, threshold "
                    "classification, verified constructions, Monte Carlo scans.")
    parser.add_argument("--version", action="version", version=PACKAGE_VERSION)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, budgets=False):
        p.add_argument("--out", help="write the result here instead of stdout")
        p.add_argument("--format", choices=("csv", "json"), default="json")
        if budgets:
            p.add_argument("--budget-nodes", type=int, default=10 ** 8,
                           help="search node budget")
            p.add_argument("--budget-secs", type=float, default=60.0,
                           help="search time budget")

    p = sub.add_parser("density", help="exact density calculus on graph6 inputs")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--m2", metavar="G6")
    group.add_argument("--m2-asym", nargs=2, metavar=("G6_1", "G6_2"))
    group.add_argument("--d2", metavar="G6")
    group.add_argument("--rho", metavar="G6")
    group.add_argument("--rho-k", nargs=2, metavar=("G6", "K"))
    group.add_argument("--mu", nargs=3, metavar=("G6", "N", "P"),
                       help="mu0 and mu1 at vertex count N, probability P")
    common(p)
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("threshold",
                       help="classify the perturbed Ramsey threshold exponent")
    p.add_argument("--patterns", required=True,
                   help="one pattern per color, comma separated: K5,K3")
    p.add_argument("--density", required=True, help="seed density, e.g. 2/5")
    common(p)
    p.set_defaults(func=_cmd_threshold)

    p = sub.add_parser("ramsey-check", help="exact Ramsey decision on one host")
    p.add_argument("--host", required=True, help="graph6 or family like turan:12,4")
    p.add_argument("--red", help="color-0 targets, '+'-separated")
    p.add_argument("--blue", help="color-1 targets")
    p.add_argument("--targets", help="all colors at once: K3,K3+C5[,...]")
    p.add_argument("--forbid", help="JSON file: per color, list of vertex lists")
    p.add_argument("--cnf", help="also write the DIMACS encoding here")
    common(p, budgets=True)
    p.set_defaults(func=_cmd_ramsey_check)

    p = sub.add_parser("construct", help="verified adversarial colorings")
    p.add_argument("--name", required=True,
                   choices=("turan-blue", "k4-lower", "lift", "bip-decomp",
                            "multicycle"))
    p.add_argument("--family", help="host family (bip-decomp, lift)")
    p.add_argument("--i", type=int, default=2, help="bipartite class count")
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--k", type=int, default=4, help="part count")
    p.add_argument("--r", type=int, default=3, help="color count (multicycle)")
    p.add_argument("--band", type=int, default=1, choices=(1, 2))
    p.add_argument("--t", type=int, default=5)
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--ell", type=int, default=3)
    p.add_argument("--p", type=float, default=0.0,
                   help="random-part edge probability")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--a-size", type=int, default=None)
    p.add_argument("--avoid", default="C3+C5+C7,C3+C5+C7",
                   help="targets the lifted base coloring must avoid")
    common(p)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("scan", help="Monte Carlo success curves over a p grid")
    p.add_argument("--base", action="append", required=True,
                   help="base family, repeatable: turan:15,5")
    p.add_argument("--red")
    p.add_argument("--blue")
    p.add_argument("--targets")
    p.add_argument("--p-grid", required=True,
                   help="'lo:hi[:per_decade]' or explicit 'a,b,c'")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    common(p, budgets=True)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("facts", help="run the verified-facts suite")
    p.add_argument("--only", help="one fact id instead of the whole suite")
    p.add_argument("--fact-args", help="JSON kwargs for --only")
    common(p)
    p.set_defaults(func=_cmd_facts)

    p = sub.add_parser("replay", help="re-run a stored experiment manifest")
    p.add_argument("manifest", help="path to a resolved .manifest.json")
    common(p)
    p.set_defaults(func=_cmd_replay)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ManifestError, ConstructionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
