"""Command-line front end: compile tables, route packets, verify a
scheme's guarantees, print the size ledger, and render SVG figures.

Exit codes: 0 success, 1 usage or I/O problem, 2 domain validation
failure, 3 verification failure.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from .cones import build_fan, cone_count
from .domain import PolygonalDomain, VertexLabel, parse_domain
from .errors import DomainError, VisrouteError
from .harness import verify_scheme
from .router import RoutingScheme, format_trace, route
from .spt import shortest_path_tree
from .svg import render_domain
from .tables import build_all_tables, parse_tables, serialize_tables, table_bits
from .visibility import build_visibility_graph

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID_DOMAIN = 2
EXIT_VERIFY_FAILED = 3


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad flags, which this tool
    reserves for invalid domains; remap usage errors to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_float(text: str) -> float:
    try:
        val = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not val > 0.0 or math.isinf(val):
        raise argparse.ArgumentTypeError("epsilon must be a positive number")
    return val


def _label(text: str) -> VertexLabel:
    try:
        return VertexLabel.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _Fail(EXIT_USAGE, f"cannot read {path}: {exc}")


def _write_file(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise _Fail(EXIT_USAGE, f"cannot write {path}: {exc}")


def _load_domain(path: str) -> PolygonalDomain:
    text = _read_file(path)
    try:
        d = parse_domain(text)
    except DomainError as exc:
        # validation failures carry the report; anything else is a
        # malformed file
        if hasattr(exc, "report"):
            raise _Fail(EXIT_INVALID_DOMAIN, f"{path}: {exc}")
        raise _Fail(EXIT_USAGE, f"{path}: {exc}")
    for note in d.notices:
        print(f"notice: {note}", file=sys.stderr)
    return d


def _build_scheme_parts(d: PolygonalDomain, epsilon: float):
    t = cone_count(epsilon)
    graph = build_visibility_graph(d)
    tables = build_all_tables(d, graph, t)
    return t, graph, tables


def _print_ledger(d: PolygonalDomain, epsilon: float, t: int, tables,
                  per_vertex: bool) -> None:
    total_entries = 0
    total_bits = 0
    max_bits = 0
    max_entries = 0
    for v in sorted(tables):
        tbl = tables[v]
        bits = table_bits(tbl, d.n, d.h)
        total_entries += len(tbl.entries)
        total_bits += bits
        max_bits = max(max_bits, bits)
        max_entries = max(max_entries, len(tbl.entries))
        if per_vertex:
            print(f"vertex {v}: entries={len(tbl.entries)} bits={bits}")
    print(f"n={d.n} h={d.h} epsilon={epsilon:g} t={t} "
          f"entries={total_entries} bits={total_bits}")
    if per_vertex:
        envelope = (1.0 / epsilon + d.h) * math.log2(d.n)
        print(f"max_entries={max_entries} max_vertex_bits={max_bits}")
        print(f"envelope (1/eps + h)*log2(n) = {envelope:.6g}; "
              f"max vertex bits / envelope = {max_bits / envelope:.6g}")


def cmd_build(args) -> int:
    if args.out is None and not args.dry_run:
        raise _Fail(EXIT_USAGE, "build needs --out FILE (or --dry-run)")
    d = _load_domain(args.domain)
    t, _graph, tables = _build_scheme_parts(d, args.epsilon)
    _print_ledger(d, args.epsilon, t, tables, per_vertex=args.dry_run)
    if not args.dry_run:
        text = serialize_tables(tables, epsilon=args.epsilon, t=t, domain=d)
        _write_file(args.out, text)
        print(f"wrote: {args.out}")
    return EXIT_OK


def cmd_stats(args) -> int:
    d = _load_domain(args.domain)
    t, _graph, tables = _build_scheme_parts(d, args.epsilon)
    _print_ledger(d, args.epsilon, t, tables, per_vertex=True)
    return EXIT_OK


def cmd_route(args) -> int:
    text = _read_file(args.tables)
    try:
        ts = parse_tables(text)
        scheme = RoutingScheme.from_table_set(ts)
        trace = route(scheme, args.frm, args.to)
    except (VisrouteError, ValueError) as exc:
        raise _Fail(EXIT_USAGE, str(exc))
    graph = build_visibility_graph(ts.domain)
    spt = shortest_path_tree(graph, args.frm)
    trace.set_geodesic(spt.dist_to(args.to))
    sys.stdout.write(format_trace(trace))
    return EXIT_OK


def _parse_pairs(words) -> object:
    if words == ["all"]:
        return "all"
    if len(words) == 2 and words[0] == "sample":
        try:
            count = int(words[1])
        except ValueError:
            count = -1
        if count > 0:
            return count
    raise _Fail(EXIT_USAGE,
                "--pairs takes 'all' or 'sample N' with a positive N")


def cmd_verify(args) -> int:
    d = _load_domain(args.domain)
    pairs = _parse_pairs(args.pairs)
    tables = None
    if args.tables is not None:
        try:
            ts = parse_tables(_read_file(args.tables))
        except VisrouteError as exc:
            raise _Fail(EXIT_USAGE, f"{args.tables}: {exc}")
        if ts.n != d.n or ts.h != d.h:
            raise _Fail(EXIT_USAGE,
                        f"{args.tables}: header n={ts.n} h={ts.h} does not "
                        f"match the domain (n={d.n} h={d.h})")
        if ts.t != cone_count(args.epsilon):
            raise _Fail(EXIT_USAGE,
                        f"{args.tables}: built for t={ts.t}, but epsilon="
                        f"{args.epsilon:g} gives t={cone_count(args.epsilon)}")
        tables = ts.tables
    report = verify_scheme(d, args.epsilon, pairs=pairs, seed=args.seed,
                           tables=tables)
    sys.stdout.write(report.to_text())
    return EXIT_OK if report.ok else EXIT_VERIFY_FAILED


def _parse_trace_labels(text: str) -> list[VertexLabel]:
    labels: list[VertexLabel] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("total="):
            continue
        left, sep, rest = line.partition(" -> ")
        if not sep or not rest.split():
            raise ValueError(f"not a trace line: {line!r}")
        if not labels:
            labels.append(VertexLabel.parse(left.strip()))
        labels.append(VertexLabel.parse(rest.split()[0]))
    if not labels:
        raise ValueError("trace file contains no hops")
    return labels


def cmd_render(args) -> int:
    d = _load_domain(args.domain)
    trace = None
    if args.trace is not None:
        try:
            trace = _parse_trace_labels(_read_file(args.trace))
            for v in trace:
                d.check_label(v)
        except (ValueError, DomainError) as exc:
            raise _Fail(EXIT_USAGE, f"{args.trace}: {exc}")
    fan = None
    if args.cones is not None:
        try:
            d.check_label(args.cones)
            fan = build_fan(d, args.cones, cone_count(args.epsilon))
        except VisrouteError as exc:
            raise _Fail(EXIT_USAGE, str(exc))
    _write_file(args.out, render_domain(d, trace=trace, fan=fan))
    print(f"wrote: {args.out}")
    return EXIT_OK


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="visroute",
        description="Compact routing tables for visibility graphs of "
                    "polygonal domains: build, route, verify, render.")
    sub = parser.add_subparsers(dest="command", required=True,
                                metavar="command", parser_class=_Parser)

    p = sub.add_parser("build", help="compile routing tables for a domain")
    p.add_argument("--domain", required=True, help="domain JSON file")
    p.add_argument("--epsilon", required=True, type=_positive_float,
                   help="stretch slack (> 0); stretch is at most 1+epsilon")
    p.add_argument("--out", help="output tables file")
    p.add_argument("--dry-run", action="store_true",
                   help="print the size ledger without writing tables")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("stats", help="print the table-size ledger")
    p.add_argument("--domain", required=True, help="domain JSON file")
    p.add_argument("--epsilon", required=True, type=_positive_float)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("route", help="route a packet and print the trace")
    p.add_argument("--tables", required=True, help="tables file (with domain)")
    p.add_argument("--from", dest="frm", required=True, type=_label,
                   metavar="i:k", help="source vertex label")
    p.add_argument("--to", required=True, type=_label, metavar="i:k",
                   help="target vertex label")
    p.set_defaults(func=cmd_route)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--domain", required=True, help="domain JSON file")
    p.add_argument("--epsilon", required=True, type=_positive_float)
    p.add_argument("--pairs", nargs="+", default=["all"],
                   metavar="all|sample N",
                   help="route all ordered pairs or a seeded sample")
    p.add_argument("--seed", type=int, default=0, help="sampling seed")
    p.add_argument("--tables",
                   help="verify these tables instead of freshly built ones")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="render the domain to SVG")
    p.add_argument("--domain", required=True, help="domain JSON file")
    p.add_argument("--trace", help="trace file from the route command")
    p.add_argument("--cones", type=_label, metavar="i:k",
                   help="draw the cone fan at this vertex")
    p.add_argument("--epsilon", type=_positive_float, default=1.0,
                   help="epsilon for the fan's cone count (default 1)")
    p.add_argument("--out", required=True, help="output SVG file")
    p.set_defaults(func=cmd_render)
    return parser


def _flush_quietly() -> None:
    # A downstream consumer may close the pipe early (e.g. `visroute ... |
    # head`).  Redirect the broken stream to devnull so interpreter shutdown
    # cannot override the exit code with a flush failure.
    for stream in (sys.stdout, sys.stderr):
        try:
            stream.flush()
        except (BrokenPipeError, OSError, ValueError):
            try:
                devnull = os.open(os.devnull, os.O_WRONLY)
                os.dup2(devnull, stream.fileno())
            except (OSError, ValueError):
                pass


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code = args.func(args)
    except _Fail as fail:
        try:
            print(f"visroute: {fail.message}", file=sys.stderr)
        except BrokenPipeError:
            pass
        code = fail.code
    except BrokenPipeError:
        code = EXIT_USAGE
    _flush_quietly()
    return code


if __name__ == "__main__":
    sys.exit(main())
