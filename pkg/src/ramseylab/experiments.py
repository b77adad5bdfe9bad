"""Experiment manifests: run a named operation from a JSON config,
persist results plus a resolved manifest, and replay stored runs with
byte-comparison of the result rows.

A manifest is a JSON object:

    {"op": "scan" | "facts" | "fact",
     "name": "<fact id>",            # op == "fact" only
     "args": { ... },                # op-specific
     "seed": 123,                    # optional; drawn and persisted if absent
     "out": "results.csv"}           # relative to the manifest

Running writes the result file and a sibling ``<out>.manifest.json``
with the seed, the probability grid, and the package version resolved,
so a later replay needs no defaults.  Replays are compared byte for
byte, except that fact-report runtimes are zeroed on both sides first.
"""

from __future__ import annotations

import copy
import json
import os
import secrets
from typing import Optional, Union

from . import facts as facts_mod
from .graphs import build_family
from .perturb import log_spaced_grid, threshold_scan

PACKAGE_VERSION = "0.1.0"

_FACT_OPS = {
    "list_cycle_lemma": facts_mod.verify_list_cycle_lemma,
    "odd_cycle_unavoidable": facts_mod.verify_odd_cycle_unavoidable,
    "small_ramsey": facts_mod.verify_small_ramsey,
    "path_readings": facts_mod.path_ramsey_readings,
    "matched_gadget": facts_mod.verify_matched_gadget,
    "matched_gadget_general": facts_mod.verify_matched_gadget_general,
    "bipartite_split": facts_mod.verify_bipartite_split,
}


class ManifestError(ValueError):
    """The manifest does not describe a runnable experiment."""


def parse_pattern(token: str):
    """One target pattern from compact text: K5, C7, P4, or g6:<code>."""
    from . import graph6
    from .graphs import arbitrary, clique, cycle, path

    tok = token.strip()
    low = tok.lower()
    if low.startswith(("g6:", "graph6:")):
        return arbitrary(graph6.decode(tok.split(":", 1)[1]))
    if len(tok) >= 2 and tok[0] in "KCPkcp" and tok[1:].isdigit():
        size = int(tok[1:])
        return {"k": clique, "c": cycle, "p": path}[tok[0].lower()](size)
    raise ManifestError(f"cannot parse pattern {token!r}")


def parse_targets(text: str) -> list[list]:
    """Per-color target lists: colors split on ',', alternatives on '+'.

    "K3,K3+C5" means color 0 forbids K3 and color 1 forbids K3 or C5.
    """
    colors = [part for part in text.split(",")]
    if len(colors) < 2:
        raise ManifestError("need at least two comma-separated colors")
    return [[parse_pattern(tok) for tok in part.split("+")] for part in colors]


def _fact_report(name: str, args: dict) -> facts_mod.FactReport:
    if name not in _FACT_OPS:
        raise ManifestError(f"unknown fact {name!r}; known: {sorted(_FACT_OPS)}")
    kwargs = dict(args)
    for key in ("first", "second"):
        if key in kwargs:
            kwargs[key] = [parse_pattern(t) for t in str(kwargs[key]).split("+")]
    return _FACT_OPS[name](**kwargs)


def _resolve_grid(args: dict) -> list[float]:
    grid = args.get("p_grid")
    if isinstance(grid, list):
        return [float(p) for p in grid]
    if isinstance(grid, dict):
        return log_spaced_grid(float(grid["lo"]), float(grid["hi"]),
                               int(grid.get("per_decade", 13)))
    raise ManifestError("scan needs p_grid as a list or {lo, hi, per_decade}")


def _run_scan(args: dict, seed: int):
    bases = [build_family(b) for b in args["bases"]]
    targets = parse_targets(args["targets"])
    grid = _resolve_grid(args)
    result = threshold_scan(
        bases, targets, grid, int(args["trials"]), seed,
        node_budget=int(args.get("node_budget", 10 ** 8)),
        time_budget=float(args.get("time_budget", 60.0)),
        clique_shortcut=bool(args.get("clique_shortcut", True)))
    return result, grid


def _strip_runtimes(obj):
    if isinstance(obj, dict):
        return {k: _strip_runtimes(v) for k, v in obj.items() if k != "runtime"}
    if isinstance(obj, list):
        return [_strip_runtimes(v) for v in obj]
    return obj


def _result_text(manifest: dict) -> str:
    """The canonical result-file contents for a resolved manifest."""
    op = manifest.get("op")
    args = manifest.get("args", {})
    if op == "scan":
        result, _ = _run_scan(args, int(manifest["seed"]))
        return result.to_csv()
    if op == "facts":
        reports = [r.to_jsonable() for r in facts_mod.default_fact_suite()]
        return json.dumps(reports, indent=2) + "\n"
    if op == "fact":
        report = _fact_report(manifest["name"], args)
        return json.dumps(report.to_jsonable(), indent=2) + "\n"
    raise ManifestError(f"unknown op {op!r}")


def load_manifest(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        manifest = json.load(fh)
    if not isinstance(manifest, dict) or "op" not in manifest:
        raise ManifestError("manifest must be a JSON object with an 'op' key")
    return manifest


def run_experiment(manifest: Union[str, dict],
                   base_dir: Optional[str] = None) -> dict:
    """Execute a manifest, write results and the resolved manifest copy.

    Returns {"out": result path, "manifest": resolved-copy path,
    "resolved": the resolved manifest dict}.
    """
    if isinstance(manifest, str):
        base_dir = base_dir or os.path.dirname(os.path.abspath(manifest))
        manifest = load_manifest(manifest)
    base_dir = base_dir or os.getcwd()
    resolved = copy.deepcopy(manifest)
    resolved["version"] = PACKAGE_VERSION
    if "seed" not in resolved:
        resolved["seed"] = secrets.randbits(63)
    if resolved["op"] == "scan":
        resolved.setdefault("args", {})
        resolved["args"]["p_grid"] = _resolve_grid(resolved["args"])
    out_name = resolved.get("out")
    if not out_name:
        out_name = "results.csv" if resolved["op"] == "scan" else "results.json"
        resolved["out"] = out_name
    text = _result_text(resolved)
    out_path = os.path.join(base_dir, out_name)
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(text)
    manifest_path = out_path + ".manifest.json"
    with open(manifest_path, "w", encoding="utf-8") as fh:
        json.dump(resolved, fh, indent=2)
        fh.write("\n")
    return {"out": out_path, "manifest": manifest_path, "resolved": resolved}


def replay(manifest_path: str) -> dict:
    """Re-run a resolved manifest and compare against the stored result.

    CSV results must match byte for byte; JSON fact reports are
    compared after zeroing the volatile runtime fields.  A package
    version change does not stop the replay but is reported.
    """
    manifest = load_manifest(manifest_path)
    if "seed" not in manifest:
        raise ManifestError("replay needs a resolved manifest with a seed")
    base_dir = os.path.dirname(os.path.abspath(manifest_path))
    stored_path = os.path.join(base_dir, manifest["out"])
    with open(stored_path, encoding="utf-8") as fh:
        stored = fh.read()
    fresh = _result_text(manifest)
    if manifest["op"] == "scan":
        identical = stored == fresh
    else:
        identical = _strip_runtimes(json.loads(stored)) == _strip_runtimes(json.loads(fresh))
    report = {
        "op": manifest["op"],
        "out": stored_path,
        "identical": identical,
        "version_recorded": manifest.get("version"),
        "version_running": PACKAGE_VERSION,
    }
    if manifest.get("version") != PACKAGE_VERSION:
        report["version_mismatch"] = True
    if not identical:
        report["stored_bytes"] = len(stored)
        report["replayed_bytes"] = len(fresh)
    return report
