"""Command-line entry point: ``c4star construct | verify | enumerate``.

Exit codes: 0 success (or co-critical), 1 not co-critical, 2 bad input or
unsupported parameters, 3 indeterminate (a search budget ran out).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .atlas import min_c4_saturated, min_cocritical
from .canon import canonical_labeling, colored_structure
from .coloring import EdgeColoring, SolverConfig, enumerate_critical_colorings
from .cocritical import verify_cocritical
from .constructions import (
    build_g,
    build_g_k2,
    certificate_coloring,
    certificate_coloring_k2,
    predicted_edge_count,
)
from .errors import C4StarError, CapabilityError, IndeterminateError
from .formats import decode_graph6, encode_graph6, parse_edge_list, to_dot
from .graph import Graph

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INDETERMINATE = 0, 1, 2, 3
SCAN_LIMIT_LOG2 = 30
TIMING_KEYS = {"time_ms", "timing", "timestamp", "wall_time_ms"}


def _strip_timing(obj):
    if isinstance(obj, dict):
        return {k: _strip_timing(v) for k, v in obj.items() if k not in TIMING_KEYS}
    if isinstance(obj, list):
        return [_strip_timing(v) for v in obj]
    return obj


def _manifest(args, command: str) -> dict:
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "command")}
    return {
        "command": command,
        "parameters": params,
        "input": getattr(args, "input", None),
        "output": getattr(args, "out", None),
        "budgets": {"nodes": getattr(args, "budget_nodes", 0), "secs": getattr(args, "budget_secs", 0)},
        "seed": args.seed,
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


def _emit(args, report: dict, out_path: str | None = None) -> None:
    if args.deterministic:
        report = _strip_timing(report)
    if args.format == "table":
        text = _table(report)
    else:
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


def _table(report: dict, indent: str = "") -> str:
    lines = []
    for key, val in report.items():
        if isinstance(val, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_table(val, indent + "  ").rstrip("\n"))
        elif isinstance(val, list) and len(val) > 8:
            lines.append(f"{indent}{key}: [{len(val)} items]")
        else:
            lines.append(f"{indent}{key}: {val}")
    return "\n".join(lines) + "\n"


def _read_graph(args) -> Graph:
    text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
    if args.input_format == "edgelist":
        return parse_edge_list(text)
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise C4StarError("input contains no graph")
    return decode_graph6(lines[0])


def _config(args) -> SolverConfig:
    return SolverConfig(node_budget=args.budget_nodes, time_budget=args.budget_secs)


def cmd_construct(args) -> int:
    if args.family == "c4-star":
        if args.k is None:
            raise C4StarError("--k is required for the c4-star family")
        g, bp = build_g(args.k, args.n)
        cert = certificate_coloring(bp, _config(args))
        predicted = predicted_edge_count(args.k, args.n)
    else:
        g, bp = build_g_k2(args.n)
        cert = certificate_coloring_k2(bp)
        predicted = 2 * args.n - 3
    g6 = encode_graph6(g)
    report = {
        "manifest": _manifest(args, "construct"),
        "family": args.family,
        "k": bp.k,
        "n": g.n,
        "e": g.edge_count(),
        "predicted_e": predicted,
        "graph6": g6,
        "certificate_provenance": cert.provenance,
    }
    if args.out:
        prefix = Path(args.out)
        prefix.parent.mkdir(parents=True, exist_ok=True)
        Path(f"{prefix}.g6").write_text(g6 + "\n")
        Path(f"{prefix}.roles.json").write_text(json.dumps(bp.role_json(), indent=2) + "\n")
        coloring = cert.coloring.to_json(bp.k) | {"provenance": cert.provenance}
        Path(f"{prefix}.coloring.json").write_text(json.dumps(coloring, indent=2) + "\n")
        files = [f"{prefix}.g6", f"{prefix}.roles.json", f"{prefix}.coloring.json"]
        if args.dot:
            labels = dict(enumerate(bp.labels))
            Path(f"{prefix}.dot").write_text(to_dot(g, cert.coloring.as_dict(), labels))
            files.append(f"{prefix}.dot")
        report["files"] = files
    _emit(args, report)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _read_graph(args)
    report = verify_cocritical(g, args.k, _config(args), jobs=args.jobs)
    data = {"manifest": _manifest(args, "verify")} | report.as_dict()
    _emit(args, data, args.out)
    if report.verdict is None:
        return EXIT_INDETERMINATE
    return EXIT_OK if report.verdict else EXIT_FALSE


def _reduced_count(colorings: list[EdgeColoring]) -> int:
    codes = set()
    for c in colorings:
        n = c.graph.n
        red = [0] * n
        blue = [0] * n
        for u, v in c.graph.edges():
            side = blue if (u, v) in c.blue else red
            side[u] |= 1 << v
            side[v] |= 1 << u
        codes.add(canonical_labeling(colored_structure(n, red, blue))[0])
    return len(codes)


def cmd_enumerate(args) -> int:
    manifest = _manifest(args, "enumerate")
    if args.mode in ("saturated", "cocritical"):
        if args.n is None:
            raise C4StarError("--n is required")
        if args.n * (args.n - 1) // 2 > SCAN_LIMIT_LOG2 and not args.force:
            raise CapabilityError(f"scan over 2^{args.n * (args.n - 1) // 2} subsets refused without --force")
        if args.mode == "saturated":
            summary = min_c4_saturated(args.n)
        else:
            if args.k is None:
                raise C4StarError("--k is required for cocritical mode")
            summary = min_cocritical(args.n, args.k, long_running=args.long_running, jobs=args.jobs)
        _emit(args, {"manifest": manifest} | summary.as_dict(), args.out)
        return EXIT_OK

    if args.input is None or args.k is None:
        raise C4StarError("colorings mode needs --input and --k")
    g = _read_graph(args)
    cfg = SolverConfig(node_budget=args.budget_nodes, time_budget=args.budget_secs,
                       enumeration_limit=args.limit)
    result = enumerate_critical_colorings(g, args.k, cfg)
    data = {
        "manifest": manifest,
        "graph6": encode_graph6(g),
        "k": args.k,
        "raw_count": result.count,
        "reduced_count": _reduced_count(result.colorings),
        "truncated": result.truncated,
        "aborted": result.aborted,
        "stats": result.stats.as_dict(),
        "colorings": [c.to_json(args.k)["edges"] for c in result.colorings],
    }
    _emit(args, data, args.out)
    return EXIT_INDETERMINATE if result.aborted else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--out")
    common.add_argument("--budget-nodes", type=int, default=0)
    common.add_argument("--budget-secs", type=float, default=600.0)
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--force", action="store_true")
    common.add_argument("--deterministic", action="store_true",
                        help="omit timestamps and wall-clock timings from the output")

    parser = argparse.ArgumentParser(prog="c4star", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build an extremal co-critical graph")
    p.add_argument("--family", choices=("c4-star", "c4-star-k2"), required=True)
    p.add_argument("--dot", action="store_true", help="also write a DOT file")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="decide co-criticality of a graph")
    p.add_argument("--input", required=True, help='graph6 file (first line is used) or "-"')
    p.add_argument("--input-format", choices=("graph6", "edgelist"), default="graph6")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", parents=[common], help="exhaustive scans and colouring counts")
    p.add_argument("--mode", choices=("saturated", "cocritical", "colorings"), required=True)
    p.add_argument("--input")
    p.add_argument("--input-format", choices=("graph6", "edgelist"), default="graph6")
    p.add_argument("--limit", type=int, default=0, help="stop after this many colourings")
    p.add_argument("--long-running", action="store_true", help="allow the n=8 co-critical scan")
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and args.k is None:
        parser.error("--k is required")
    if args.command == "construct" and args.n is None:
        parser.error("--n is required")
    try:
        return args.func(args)
    except IndeterminateError as exc:
        print(f"indeterminate: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE
    except (C4StarError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
