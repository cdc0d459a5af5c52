"""``edgeloc`` command line: solve, verify, construct, report.

Exit codes: 0 success, 1 verification failure (or FAIL rows in a report),
2 input error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .bounds import bounds_report
from .coloring import coloring_from_json, verify_elc
from .constructions import complete_matrix, construct_coloring
from .exceptions import (
    ColoringError,
    ConstructionError,
    DisconnectedGraphError,
    GraphFormatError,
    HypothesisError,
    InvalidFamilyError,
    UnsupportedSizeError,
)
from .graph import Graph, check_graph, encode_graph6, family_graph, parse_edge_list, parse_graph6
from .solver import BUDGET_EXHAUSTED, SolveOptions, elc_number, feasible
from . import suite

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

INPUT_ERRORS = (GraphFormatError, DisconnectedGraphError, InvalidFamilyError, UnsupportedSizeError,
                ColoringError, HypothesisError, OSError, json.JSONDecodeError)


class InputError(Exception):
    pass


def _add_source(p: argparse.ArgumentParser, required: bool = True) -> None:
    src = p.add_mutually_exclusive_group(required=required)
    src.add_argument("--g6", help="graph6 word")
    src.add_argument("--edges", metavar="PATH", help="edge-list file ('n m' header then 'u v' lines); '-' for stdin")
    src.add_argument("--family", metavar="SPEC", help="family spec such as cycle:6 or double_star:3,2")


def _add_budget(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget-nodes", type=int, default=10**8)
    p.add_argument("--budget-secs", type=float, default=None,
                   help="wall-clock budget (default: $ELC_BUDGET_SECS or 300)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--deterministic", action=argparse.BooleanOptionalAction, default=True)


def _options(args) -> SolveOptions:
    kw = dict(node_budget=args.budget_nodes, workers=args.workers, deterministic=args.deterministic)
    if args.budget_secs is not None:
        kw["time_budget"] = args.budget_secs
    return SolveOptions(**kw)


def load_graph(args) -> Graph:
    if args.g6 is not None:
        g = parse_graph6(args.g6)
    elif args.edges is not None:
        text = sys.stdin.read() if args.edges == "-" else open(args.edges).read()
        g = parse_edge_list(text)
    else:
        g = family_graph(args.family)
    return check_graph(g)


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def cmd_solve(args) -> int:
    g = load_graph(args)
    opts = _options(args)
    res = feasible(g, args.k, opts) if args.k is not None else elc_number(g, opts)
    out = res.to_dict(g)
    out["graph6"] = encode_graph6(g) if g.n <= 62 else None
    _emit(out)
    return EXIT_BUDGET if res.status == BUDGET_EXHAUSTED else EXIT_OK


def cmd_verify(args) -> int:
    g = load_graph(args)
    with open(args.coloring) as fh:
        data = json.load(fh)
    if isinstance(data, dict) and "coloring" in data and "edges" not in data:
        data = data["coloring"]  # accept a whole construct bundle
    col = coloring_from_json(g, data, normalize=args.normalize)
    report = verify_elc(g, col)
    _emit(report.to_dict())
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_construct(args) -> int:
    cert = construct_coloring(args.family)
    if args.verify and not verify_elc(cert.graph, cert.coloring).passed:
        return EXIT_VERIFY  # pragma: no cover - construct_coloring already verifies
    out = cert.to_dict()
    if cert.theorem_tag.value.startswith("complete_") and args.family.startswith("complete:"):
        n = cert.graph.n
        alpha = complete_matrix(n)
        out["matrix"] = [[alpha[(i, j)] if i < j else None for j in range(1, n + 1)] for i in range(1, n + 1)]
    _emit(out)
    return EXIT_OK


def cmd_report(args) -> int:
    opts = _options(args)
    if args.g6 or args.edges or args.family:
        rep = bounds_report(load_graph(args), opts, graph_id=args.family or args.g6)
        if args.json:
            _emit(rep.to_dict())
        else:
            import csv

            csv.writer(sys.stdout, lineterminator="\n").writerow(rep.csv_header())
            sys.stdout.write(rep.to_csv_row())
        return EXIT_BUDGET if rep.solver_status == BUDGET_EXHAUSTED else EXIT_OK

    if args.suite != "theorems":
        raise InputError(f"unknown suite {args.suite!r}")
    entries = suite.load_manifest(args.manifest)
    cases = suite.expand(entries, only=args.only, n_max=args.n_max)
    if not cases:
        raise InputError("no cases selected")
    results = suite.run_suite(cases, opts, workers=args.workers)
    text = suite.to_csv(results, deterministic=args.deterministic)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(text)
    counts = suite.summarize(results)
    if args.json:
        _emit({"summary": counts, "rows": [dict(zip(suite.CSV_COLUMNS, r.row(args.deterministic)))
                                             for r in results]})
    elif not args.csv:
        sys.stdout.write(text)
    total_ms = sum(r.millis for r in results)
    print(" ".join(f"{k}={v}" for k, v in counts.items()) + f" cases={len(results)} millis={total_ms}",
          file=sys.stderr)
    if counts[suite.FAIL]:
        return EXIT_VERIFY
    if counts[suite.BUDGET]:
        return EXIT_BUDGET
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="edgeloc", description="Edge-locating colourings.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute the edge-locating chromatic number")
    _add_source(p)
    p.add_argument("--k", type=int, default=None, help="only decide feasibility with exactly k colours")
    _add_budget(p)
    p.add_argument("--json", action="store_true", help="JSON output (always on; kept for symmetry)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a colouring file against a graph")
    _add_source(p)
    p.add_argument("--coloring", required=True, metavar="PATH")
    p.add_argument("--normalize", action="store_true", help="renumber used colours to 1..k first")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="closed-form colouring for a family")
    p.add_argument("--family", required=True, metavar="SPEC")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("report", help="theorem regression suite, or bounds for one graph")
    _add_source(p, required=False)
    p.add_argument("--suite", default="theorems")
    p.add_argument("--manifest", default=None, help="alternative manifest JSON")
    p.add_argument("--only", action="append", default=None, help="group, theorem tag or case-id prefix")
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--csv", default=None, metavar="PATH")
    p.add_argument("--json", action="store_true")
    _add_budget(p)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors already
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InputError, *INPUT_ERRORS) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConstructionError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
