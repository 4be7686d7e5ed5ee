"""Command-line front end.

Exit codes: 0 success / yes, 1 negative answer, 2 input error, 3 budget
exhausted.
"""

from __future__ import annotations

import argparse
import logging
import sys
import warnings
from pathlib import Path

from . import fixtures
from .bench import SUITES, run_suite, write_csv
from .errors import CfvcError, FormatError
from .graph import Graph, VertexCover, greedy_vertex_cover, parse_graph, write_graph
from .reductions import (
    artifact_from_json,
    artifact_to_json,
    build_reduction,
    coloring_to_assignment,
    parse_cnf,
)
from .solvers import (
    Decision,
    SolveConfig,
    kernelize,
    solve_fpt,
    solve_k,
    svcfc_number,
    write_outcome,
    write_trace,
)
from .verify import parse_coloring, verify_strong_cfvc, write_coloring, write_report

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

log = logging.getLogger("cfvc")


class InputError(Exception):
    """One-line diagnostic for the user; maps to exit code 2."""


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _load(parser, path: str):
    try:
        return parser(_read(path), source=path)
    except FormatError as exc:
        raise InputError(str(exc.with_source(path))) from None


def _load_cover(path: str, g: Graph) -> VertexCover:
    """Cover file: whitespace-separated 1-indexed vertex ids; 'c' lines are comments."""
    ids = []
    for lineno, raw in enumerate(_read(path).splitlines(), start=1):
        if raw.strip().startswith("c"):
            continue
        for tok in raw.split():
            if not tok.isdigit() or not 1 <= int(tok) <= g.n:
                raise InputError(f"{path}:{lineno}: bad vertex id {tok!r}")
            ids.append(int(tok) - 1)
    cover = VertexCover(tuple(ids))
    if not cover.covers(g):
        raise InputError(f"{path}: not a vertex cover of the graph")
    return cover


def _config(args) -> SolveConfig:
    return SolveConfig(
        node_budget=getattr(args, "budget", None),
        symmetry_breaking=not getattr(args, "no_symmetry_breaking", False),
        parallel=getattr(args, "parallel", False),
    )


# -- subcommands -------------------------------------------------------------

def cmd_verify(args) -> int:
    g = _load(parse_graph, args.graph)
    f = _load(parse_coloring, args.coloring)
    if len(f) != g.n:
        raise InputError(f"{args.coloring}: coloring has {len(f)} vertices, graph has {g.n}")
    report = verify_strong_cfvc(g, f)
    _write(args.out, write_report(report))
    return EXIT_OK if report.ok else EXIT_NO


def cmd_solve(args) -> int:
    g = _load(parse_graph, args.graph)
    cfg = _config(args)
    if args.fpt:
        cover = _load_cover(args.cover, g) if args.cover else greedy_vertex_cover(g)
        out = solve_fpt(g, args.k, cover, cfg)
    elif args.min:
        out = svcfc_number(g, cfg)
    else:
        out = solve_k(g, args.k, cfg)
    if out.certificate is not None:
        if not verify_strong_cfvc(g, out.certificate, fast_fail=True).ok:
            raise AssertionError("solver certificate failed re-verification")
        if args.out:
            _write(args.out, write_coloring(out.certificate))
    text = write_outcome(out)
    if args.min and out.k is not None:
        text = f"k {out.k}\n" + text
    sys.stdout.write(text)
    return {Decision.YES: EXIT_OK, Decision.NO: EXIT_NO, Decision.BUDGET: EXIT_BUDGET}[out.decision]


def cmd_kernelize(args) -> int:
    g = _load(parse_graph, args.graph)
    cover = _load_cover(args.cover, g) if args.cover else greedy_vertex_cover(g)
    kernel, trace = kernelize(g, args.k, cover)
    _write(args.out, write_graph(kernel))
    _write(args.trace, write_trace(trace))
    log.info("kernel has %d of %d vertices (%d removed)", kernel.n, g.n, len(trace.removals))
    return EXIT_OK


def cmd_reduce(args) -> int:
    cnf = _load(parse_cnf, args.cnf)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        art = build_reduction(cnf, args.variant)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    _write(args.out, write_graph(art.graph))
    _write(args.map, artifact_to_json(art))
    return EXIT_OK


def cmd_extract(args) -> int:
    g = _load(parse_graph, args.graph) if args.graph else None
    try:
        art = artifact_from_json(_read(args.map), g)
    except FormatError as exc:
        raise InputError(str(exc.with_source(args.map))) from None
    f = _load(parse_coloring, args.coloring)
    if len(f) != art.graph.n:
        raise InputError(f"{args.coloring}: coloring has {len(f)} vertices, gadget has {art.graph.n}")
    if f.k != 3 or not verify_strong_cfvc(art.graph, f, fast_fail=True).ok:
        print("coloring is not a strong cfvc 3-coloring of the gadget", file=sys.stderr)
        return EXIT_NO
    print(coloring_to_assignment(art, f).render())
    return EXIT_OK


def cmd_generate(args) -> int:
    if args.family == "path":
        g = fixtures.path(args.n)
    elif args.family == "complete-bipartite":
        g = fixtures.complete_bipartite(args.p, args.q)
    else:
        g = fixtures.fig1(minus_u=args.minus_u)
        if args.coloring_out:
            if args.minus_u:
                raise InputError("--coloring-out is only available for the full fig1 graph")
            _write(args.coloring_out, write_coloring(fixtures.FIG1_COLORING))
    _write(args.out, write_graph(g))
    return EXIT_OK


def cmd_bench(args) -> int:
    rows = run_suite(args.suite, args.max, _config(args))
    if args.csv and args.csv != "-":
        with open(args.csv, "w", newline="") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, sys.stdout)
    return EXIT_OK


# -- parser ------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cfvc", description="Strong conflict-free vertex-connection colorings.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("verify", help="check a coloring")
    s.add_argument("--graph", required=True)
    s.add_argument("--coloring", required=True)
    s.add_argument("--out", help="write the report here instead of stdout")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("solve", help="decide k-colorability or compute the minimum k")
    s.add_argument("--graph", required=True)
    mode = s.add_mutually_exclusive_group(required=True)
    mode.add_argument("--k", type=_positive)
    mode.add_argument("--min", action="store_true")
    s.add_argument("--fpt", action="store_true", help="vertex-cover kernel pipeline")
    s.add_argument("--cover", help="vertex cover file (with --fpt)")
    s.add_argument("--budget", type=_positive)
    s.add_argument("--out", help="certificate file")
    s.add_argument("--parallel", action="store_true")
    s.add_argument("--no-symmetry-breaking", action="store_true")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("kernelize", help="apply the twin reduction rule")
    s.add_argument("--graph", required=True)
    s.add_argument("--k", type=_positive, required=True)
    s.add_argument("--cover")
    s.add_argument("--out", required=True)
    s.add_argument("--trace", required=True)
    s.set_defaults(func=cmd_kernelize)

    s = sub.add_parser("reduce", help="compile a positive CNF into a gadget graph")
    s.add_argument("--cnf", required=True)
    s.add_argument("--variant", choices=("vc", "dp"), required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--map", required=True)
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("extract", help="read a NAE assignment off a gadget coloring")
    s.add_argument("--map", required=True)
    s.add_argument("--coloring", required=True)
    s.add_argument("--graph", help="optional gadget graph, checked against the map")
    s.set_defaults(func=cmd_extract)

    s = sub.add_parser("generate", help="write a built-in graph")
    fam = s.add_subparsers(dest="family", required=True, parser_class=_Parser)
    f = fam.add_parser("path")
    f.add_argument("n", type=_positive)
    f = fam.add_parser("complete-bipartite")
    f.add_argument("p", type=_positive)
    f.add_argument("q", type=_positive)
    f = fam.add_parser("fig1")
    f.add_argument("--minus-u", action="store_true")
    f.add_argument("--coloring-out", help="also write a known strong 3-coloring of the fixture")
    for f in fam.choices.values():
        f.add_argument("--out")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("bench", help="timing table as CSV")
    s.add_argument("--suite", choices=SUITES, required=True)
    s.add_argument("--max", type=_positive, required=True)
    s.add_argument("--csv")
    s.add_argument("--budget", type=_positive)
    s.set_defaults(func=cmd_bench)
    return p


def _check_combinations(args) -> None:
    if args.command == "solve":
        if args.fpt and args.min:
            raise InputError("cfvc solve: --fpt needs --k")
        if args.cover and not args.fpt:
            raise InputError("cfvc solve: --cover requires --fpt")


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        _check_combinations(args)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(message)s")
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CfvcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
