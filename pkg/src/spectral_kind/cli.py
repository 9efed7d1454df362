"""Command-line front end.

Exit codes: 0 success, 1 a comparison or inequality failed, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

import numpy as np

from .bounds import bound_report, mixing_check
from .catalog import named
from .errors import SpectralKindError
from .exact import Budget, alpha_k_exact
from .extremal import build_construction, tightness_experiment, verify_construction
from .fixtures import load_fixture, run_table
from .graphcore import Graph, parse_graph6, to_graph6
from .spectra import eigendecompose

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- rendering


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def render(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows[0] if len(rows) == 1 else rows, indent=2)
    if not rows:
        return ""
    header = list(rows[0])
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for r in rows:
            writer.writerow([_cell(r[h]) for h in header])
        return buf.getvalue().rstrip("\n")
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    for r in rows:
        lines.append("| " + " | ".join(_cell(r[h]) for h in header) + " |")
    return "\n".join(lines)


# ------------------------------------------------------------------- inputs


def _add_graph_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph6", metavar="STR", help="graph6 string")
    src.add_argument("--file", metavar="PATH", help="file whose first non-blank line is a graph6 string")
    src.add_argument("--named", metavar="NAME", help="catalog graph name")


def _load_graph(args) -> Graph:
    if args.graph6 is not None:
        return parse_graph6(args.graph6).with_name("graph6")
    if args.file is not None:
        try:
            with open(args.file, encoding="ascii") as fh:
                lines = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
        except (OSError, UnicodeDecodeError) as exc:
            raise UsageError(f"cannot read {args.file}: {exc}") from exc
        if not lines:
            raise UsageError(f"{args.file} contains no graph6 record")
        return parse_graph6(lines[0]).with_name(args.file)
    return named(args.named)


def _budget(args) -> Budget:
    default = Budget.default()
    if getattr(args, "budget", None) is None:
        return default
    return Budget(seconds=args.budget, max_nodes=default.max_nodes)


# ----------------------------------------------------------------- commands


def cmd_bounds(args) -> int:
    g = _load_graph(args)
    spectrum = eigendecompose(g)
    report = bound_report(g, args.k, spectrum)
    if args.dump_spectrum:
        with open(args.dump_spectrum, "w", encoding="utf-8") as fh:
            fh.write(spectrum.to_json() + "\n")
    print(render([report.to_dict(timing=args.timing)], args.format))
    return EXIT_OK


def cmd_table(args) -> int:
    fixture = load_fixture(args.k, args.fixture)
    only = set(args.rows.split(",")) if args.rows else None
    outcomes = run_table(fixture, _budget(args), exact=not args.no_exact, only=only)
    rows = [o.to_dict() for o in outcomes]
    if rows:
        print(render(rows, args.format))
    elif args.format == "json":
        print("[]")
    failed = [o.row.name for o in outcomes if o.failed]
    unresolved = [o.row.name for o in outcomes if o.alpha_status == "unresolved"]
    unavailable = [o.row.name for o in outcomes if o.bounds_status == "unavailable"]
    checked = len(outcomes) - len(unavailable)
    print(
        f"k={fixture.k}: {checked - len(failed)}/{checked} available rows match"
        f" ({len(unavailable)} unavailable, {len(unresolved)} alpha unresolved within budget)",
        file=sys.stderr,
    )
    if unresolved:
        print("unresolved: " + ", ".join(unresolved), file=sys.stderr)
    if failed:
        print("mismatched rows: " + ", ".join(failed), file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_exact(args) -> int:
    g = _load_graph(args)
    result = alpha_k_exact(g, args.k, _budget(args))
    out = {"name": g.name, "n": g.n, "k": args.k, **result.to_dict(timing=args.timing)}
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_construct(args) -> int:
    g, spec = build_construction(args.n, args.m, args.k)
    print(to_graph6(g))
    out: dict = {
        "spec": {
            "n": spec.n,
            "m": spec.m,
            "k": spec.k,
            "hub": spec.hub,
            "u": list(spec.u),
            "v": list(spec.v),
            "path_internal": [list(p) for p in spec.path_internal],
            "vertices": spec.vertex_count,
            "stated_vertex_formula": spec.stated_vertex_count,
            "edges": spec.edge_count,
        }
    }
    status = EXIT_OK
    if args.verify:
        out["verification"] = verify_construction(g, spec)
        if not out["verification"]["ok"]:
            status = EXIT_FAIL
    if args.tightness:
        report = tightness_experiment(args.m, args.k, args.n, _budget(args))
        if not args.timing:
            report.pop("elapsed", None)
        out["tightness"] = report
    print(json.dumps(out, indent=2))
    return status


def cmd_mixing(args) -> int:
    g = _load_graph(args)
    if args.trials < 0:
        raise UsageError("--trials must be non-negative")
    spectrum = eigendecompose(g)
    rng = np.random.default_rng(args.seed)
    failures = 0
    for trial in range(args.trials):
        sets = []
        for _ in range(2):
            size = int(rng.integers(1, g.n + 1))
            sets.append(sorted(rng.choice(g.n, size=size, replace=False).tolist()))
        rep = mixing_check(g, spectrum, sets[0], sets[1], args.k)
        failures += not (rep.holds_tight and rep.holds_loose)
        print(json.dumps({"trial": trial, **rep.to_dict()}))
    print(json.dumps({"trials": args.trials, "failures": failures}))
    return EXIT_FAIL if failures else EXIT_OK


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectral-kind",
        description="Spectral upper bounds on the k-independence number of a graph.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="all applicable upper bounds on alpha_k")
    _add_graph_source(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv", "md"), default="json")
    p.add_argument("--dump-spectrum", metavar="PATH", help="also write the spectrum as JSON")
    p.add_argument("--timing", action="store_true", help="include wall-clock timing (non-deterministic)")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("table", help="reproduce an appendix table")
    p.add_argument("--k", type=int, help="table to reproduce (2, 3 or 4)")
    p.add_argument("--fixture", metavar="PATH", help="custom fixture file")
    p.add_argument("--rows", help="comma-separated subset of graph names")
    p.add_argument("--budget", type=float, help="solver seconds per row")
    p.add_argument("--no-exact", action="store_true", help="skip the exact alpha_k column")
    p.add_argument("--format", choices=("json", "csv", "md"), default="md")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("exact", help="exact alpha_k by branch and bound")
    _add_graph_source(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--budget", type=float, help="solver seconds")
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("construct", help="generate the equality family for the inertia bound")
    p.add_argument("--n", type=int, required=True, help="order of each clique block")
    p.add_argument("--m", type=int, required=True, help="number of blocks")
    p.add_argument("--k", type=int, required=True, help="length of each hub path")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--tightness", action="store_true")
    p.add_argument("--budget", type=float, help="solver seconds")
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("mixing", help="random spot checks of the k-walk mixing inequality")
    _add_graph_source(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_mixing)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "table" and args.k is None and args.fixture is None:
        parser.error("table needs --k or --fixture")
    try:
        return args.func(args)
    except (UsageError, ValueError, LookupError) as exc:
        # covers bad graph input, hypothesis violations and unknown names
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SpectralKindError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
