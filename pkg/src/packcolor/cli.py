"""Command-line entry point.

Single-graph commands read one graph6 line from ``--graph6`` or standard
input. Exit codes: 0 success, 1 domain or I/O error, 2 theorem contradiction,
3 solver budget exhausted, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from . import harness
from .density import (DensityError, apply_discharging, format_eleventh, format_rational,
                      initial_charges, mad_exact, structural_audit)
from .enumerate import enumerate_connected_subcubic
from .graph import Graph, GraphError, girth, parse_kind, subdivide
from .graph6 import Graph6Error, parse_graph6, read_graph6_lines, to_str
from .packing import (DEFAULT_BUDGET, BudgetExceeded, PackingColoring, PackingError,
                      PackingSpec, Status, chi_p, lift_subdivision, solve, spec_dominates,
                      verify_coloring)
from .reducibility import (LEMMAS, ReducibilityError, build_lemma_config, check_reducible,
                           check_tool_shapes)

EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _spec(text: str) -> PackingSpec:
    try:
        return PackingSpec.parse(text)
    except PackingError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _read_graph(args) -> Graph:
    if args.graph6 is not None:
        return parse_graph6(args.graph6)
    data = sys.stdin.buffer.read().strip()
    if not data:
        raise UsageError("no graph given: pass --graph6 or a graph6 line on stdin")
    lines = data.splitlines()
    if len(lines) > 1:
        raise UsageError("expected a single graph6 line on stdin")
    return parse_graph6(lines[0])


def _classes_line(c: PackingColoring) -> str:
    return " ".join("-" if x is None else str(x) for x in c.classes)


# -- commands ---------------------------------------------------------------------

def cmd_color(args) -> int:
    g = _read_graph(args)
    res = solve(g, args.spec, args.budget, restarts=args.restarts, seed=args.seed)
    print(res.status.name)
    if res.sat:
        print(res.coloring.to_json(args.spec) if args.json else _classes_line(res.coloring))
    if args.verbose:
        print(f"nodes {res.nodes}", file=sys.stderr)
    return harness.EXIT_BUDGET if res.status is Status.BUDGET else 0


def _load_coloring(text: str) -> tuple[PackingSpec | None, PackingColoring]:
    text = text.strip()
    if text.startswith("{"):
        spec, col = PackingColoring.from_json(text)
        return spec, col
    parts = text.replace(",", " ").split()
    return None, PackingColoring(tuple(None if p == "-" else int(p) for p in parts))


def cmd_verify(args) -> int:
    g = _read_graph(args)
    raw = args.coloring
    if raw.startswith("@"):
        with open(raw[1:], encoding="utf-8") as fh:
            raw = fh.read()
    spec_in, col = _load_coloring(raw)
    spec = args.spec or spec_in
    if spec is None:
        raise UsageError("no spec: pass --spec or a JSON colouring that carries one")
    bad = verify_coloring(g, spec, col)
    if not bad:
        print("OK" if col.is_total() else f"OK partial ({len(col.uncolored)} uncoloured)")
        return 0
    for v in bad:
        print(f"class {v.cls}: {v.u} {v.v} at distance {v.distance}")
    return 1


def cmd_chi_p(args) -> int:
    g = _read_graph(args)
    k = chi_p(g, args.k_max, args.budget)
    print(f">{args.k_max}" if k is None else k)
    return 0


def cmd_mad(args) -> int:
    g = _read_graph(args)
    value, witness = mad_exact(g)
    print(format_rational(value))
    if args.witness:
        print(" ".join(map(str, sorted(witness))))
    return 0


def cmd_girth(args) -> int:
    print(girth(_read_graph(args)))
    return 0


def cmd_subdivide(args) -> int:
    d, _ = subdivide(_read_graph(args))
    print(to_str(d))
    return 0


def cmd_lift(args) -> int:
    g = _read_graph(args)
    res = solve(g, args.spec, args.budget)
    if not res.sat:
        print(res.status.name)
        return harness.EXIT_BUDGET if res.status is Status.BUDGET else 1
    lift = lift_subdivision(g, args.spec, res.coloring)
    print(to_str(lift.graph))
    print(lift.spec)
    print(_classes_line(lift.coloring))
    ok = not verify_coloring(lift.graph, lift.spec, lift.coloring)
    print(f"verify {lift.spec}: {'OK' if ok else 'FAIL'}")
    if args.against is not None:
        if not spec_dominates(lift.spec, args.against):
            print(f"verify {args.against}: not dominated")
            return 1
        ok2 = not verify_coloring(lift.graph, args.against, lift.coloring)
        print(f"verify {args.against}: {'OK' if ok2 else 'FAIL'}")
        ok = ok and ok2
    return 0 if ok else 1


def cmd_discharge(args) -> int:
    g = _read_graph(args)
    if not g.is_subcubic():
        raise GraphError("discharging is defined for subcubic graphs")
    init = initial_charges(g)
    final = apply_discharging(g, init)
    fmt = format_rational if args.plain else format_eleventh
    print("vertex degree initial final")
    for v in range(g.n):
        print(f"{v} {g.degree(v)} {fmt(init.charges[v])} {fmt(final.charges[v])}")
    print(f"total {fmt(init.total)} {fmt(final.total)}")
    if args.transfers:
        for t in final.transfers:
            print(f"{t.rule} {t.giver}->{t.receiver} {fmt(t.amount)}")
    return 0


def cmd_audit(args) -> int:
    rep = structural_audit(_read_graph(args))
    print(rep.summary())
    names = ("min_degree", "no_adjacent_2", "two_neighbor", "special_in_N2")
    flags = (rep.min_degree_ok, rep.no_adjacent_2_ok, rep.two_neighbor_ok, rep.special_in_N2_ok)
    for name, ok in zip(names, flags):
        wit = rep.witnesses.get(name)
        print(f"{name} {'ok' if ok else 'violated'}"
              + ("" if ok else " " + " ".join(str(w) for w in wit)))
    return 0


def cmd_check_lemmas(args) -> int:
    lemmas = [args.lemma] if args.lemma else list(LEMMAS)
    all_ok = True
    for lemma in lemmas:
        for cfg in build_lemma_config(lemma):
            v = check_reducible(cfg, args.max_recolor)
            all_ok &= v.reducible
            if args.json:
                print(json.dumps(v.to_json(), sort_keys=True))
            else:
                verdict = "reducible" if v.reducible else "COUNTEREXAMPLE"
                print(f"{lemma}#{cfg.variant} n={cfg.local.n} {verdict} scenarios={v.scenarios} "
                      f"excluded={v.excluded} max_repair={v.max_repair_size} "
                      f"time={v.seconds:.2f}s")
                if not v.reducible:
                    print("  " + json.dumps(v.to_json()["counterexample"], sort_keys=True))
            if lemma == "tool":
                rep = check_tool_shapes(cfg)
                all_ok &= rep.ok
                line = {"lemma": "tool", "variant": cfg.variant, "shapes": {
                    "non_extendable": rep.non_extendable, "shape1": rep.shape1,
                    "shape2": rep.shape2, "unclassified": len(rep.outside),
                    "unrepaired": rep.unrepaired,
                    "unrepaired_without_side_conditions": len(rep.unrepaired_outside)}}
                if args.json:
                    print(json.dumps(line, sort_keys=True))
                else:
                    s = line["shapes"]
                    print(f"tool#{cfg.variant} shapes non_extendable={s['non_extendable']} "
                          f"shape1={s['shape1']} shape2={s['shape2']} "
                          f"unclassified={s['unclassified']} unrepaired={s['unrepaired']}")
    return 0 if all_ok else 1


def cmd_enumerate(args) -> int:
    out = sys.stdout
    for g in enumerate_connected_subcubic(args.n):
        out.write(to_str(g) + "\n")
    return 0


def cmd_generate(args) -> int:
    print(to_str(parse_kind(args.kind)))
    return 0


def cmd_scan(args) -> int:
    try:
        filters = [harness.Filter.parse(f) for f in args.filter]
    except harness.FilterError as exc:
        raise UsageError(str(exc)) from None
    if args.input == "-":
        source = read_graph6_lines(sys.stdin.buffer)
        rows = harness.scan(source, filters, args.spec, workers=args.workers,
                            budget=args.budget, timing=args.timing)
        summary = harness.write_rows(rows, sys.stdout, args.format, args.spec)
    else:
        with open(args.input, "rb") as fh:
            rows = harness.scan(read_graph6_lines(fh), filters, args.spec,
                                workers=args.workers, budget=args.budget, timing=args.timing)
            summary = harness.write_rows(rows, sys.stdout, args.format, args.spec)
    print(summary.line(), file=sys.stderr)
    return summary.exit_code


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="packcolor", description="Packing colourings of subcubic graphs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def graph_cmd(name, func, help_):
        sp = sub.add_parser(name, help=help_, description=help_)
        sp.add_argument("--graph6", help="graph6 string (default: read one line from stdin)")
        sp.set_defaults(func=func)
        return sp

    sp = graph_cmd("color", cmd_color, "Solve for a packing colouring.")
    sp.add_argument("--spec", type=_spec, default=PackingSpec((1, 1, 2, 2)),
                    help="comma-separated distances (default 1,1,2,2)")
    sp.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    sp.add_argument("--restarts", type=int, default=0)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--json", action="store_true", help="print the colouring as JSON")
    sp.add_argument("-v", "--verbose", action="store_true")

    sp = graph_cmd("verify", cmd_verify, "Check a colouring; prints violations.")
    sp.add_argument("--spec", type=_spec, default=None)
    sp.add_argument("--coloring", required=True,
                    help="JSON {spec, classes}, space/comma-separated classes, or @FILE")

    sp = graph_cmd("chi-p", cmd_chi_p, "Packing chromatic number.")
    sp.add_argument("--k-max", type=_positive, default=12)
    sp.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)

    sp = graph_cmd("mad", cmd_mad, "Exact maximum average degree.")
    sp.add_argument("--witness", action="store_true", help="also print a densest vertex set")

    graph_cmd("girth", cmd_girth, "Girth, or 'acyclic'.")
    graph_cmd("subdivide", cmd_subdivide, "graph6 of the subdivision D(G).")

    sp = graph_cmd("lift", cmd_lift, "Colour G and lift the colouring to D(G).")
    sp.add_argument("--spec", type=_spec, default=PackingSpec((1, 1, 2, 2)))
    sp.add_argument("--against", type=_spec, default=PackingSpec((1, 2, 3, 4, 5)),
                    help="weaker spec to re-verify the lift against")
    sp.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)

    sp = graph_cmd("discharge", cmd_discharge, "Initial and final charges.")
    sp.add_argument("--plain", action="store_true", help="lowest-terms p/q instead of p/11")
    sp.add_argument("--transfers", action="store_true", help="list every rule application")

    graph_cmd("audit", cmd_audit, "Structural predicates of a subcubic graph.")

    sp = sub.add_parser("check-lemmas", help="Run the reducibility checks.")
    sp.add_argument("--lemma", choices=LEMMAS)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--max-recolor", type=int, default=None,
                    help="cap on recoloured interior vertices (default: no cap)")
    sp.set_defaults(func=cmd_check_lemmas)

    sp = sub.add_parser("enumerate", help="graph6 of every connected subcubic graph on N vertices.")
    sp.add_argument("n", type=_positive)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("generate", help="graph6 of a named graph: petersen, cycle:N, path:N, "
                                         "complete:N, prism:N.")
    sp.add_argument("kind")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("scan", help="Batch solve and audit graph6 input.")
    sp.add_argument("--input", default="-", help="graph6 file, or - for stdin")
    sp.add_argument("--filter", action="append", default=[],
                    help="subcubic, connected, mad-lt=P/Q, girth-ge=G (repeatable)")
    sp.add_argument("--spec", type=_spec, default=PackingSpec((1, 1, 2, 2)))
    sp.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    sp.add_argument("--workers", type=_positive, default=1)
    sp.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    sp.add_argument("--timing", action="store_true",
                    help="add elapsed_ms (makes output run-dependent)")
    sp.set_defaults(func=cmd_scan)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"packcolor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Graph6Error as exc:
        print(f"packcolor: graph6 error: {exc}", file=sys.stderr)
        return 1
    except (GraphError, PackingError, DensityError, ReducibilityError, BudgetExceeded,
            harness.FilterError, OSError) as exc:
        print(f"packcolor: error: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
