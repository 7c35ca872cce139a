"""Batch scanning: filter graphs, solve, audit, and report.

Rows come out in input order whatever the worker count, and carry no
timing unless asked for, so two runs over the same input give identical
bytes.
"""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .density import (THRESHOLD, apply_discharging, format_rational, initial_charges,
                      mad_exact, structural_audit)
from .graph import Acyclic, Graph, girth
from .graph6 import to_str
from .packing import (DEFAULT_BUDGET, PackingColoring, PackingSpec, Status, solve,
                      verify_coloring)

EXIT_OK, EXIT_IO, EXIT_CONTRADICTION, EXIT_BUDGET = 0, 1, 2, 3

THEOREM_SPEC = PackingSpec((1, 1, 2, 2))

CSV_FIELDS = ("index", "graph6", "n", "m", "mad", "girth", "colorable", "status",
              "structural", "initial_total", "final_total", "min_final_charge")


class FilterError(ValueError):
    pass


@dataclass(frozen=True)
class Filter:
    """One predicate: ``subcubic``, ``connected``, ``mad-lt=p/q`` or ``girth-ge=g``."""
    kind: str
    value: Fraction | int | None = None

    @classmethod
    def parse(cls, text: str) -> "Filter":
        name, _, arg = text.partition("=")
        name = name.strip()
        if name in ("subcubic", "connected"):
            if arg:
                raise FilterError(f"filter {name!r} takes no value")
            return cls(name)
        if name == "mad-lt":
            try:
                return cls(name, Fraction(arg))
            except (ValueError, ZeroDivisionError):
                raise FilterError(f"bad rational in {text!r}") from None
        if name == "girth-ge":
            try:
                return cls(name, int(arg))
            except ValueError:
                raise FilterError(f"bad integer in {text!r}") from None
        raise FilterError(f"unknown filter {text!r}")

    def __str__(self) -> str:
        if self.value is None:
            return self.kind
        v = format_rational(self.value) if isinstance(self.value, Fraction) else self.value
        return f"{self.kind}={v}"


@dataclass(frozen=True)
class ScanRow:
    index: int
    graph6: str
    n: int
    m: int
    mad: Fraction | None
    girth: object  # int or Acyclic
    status: Status
    coloring: tuple[int, ...] | None
    structural: str | None
    initial_total: Fraction | None
    final_total: Fraction | None
    min_final_charge: Fraction | None
    elapsed_ms: float | None = None

    @property
    def colorable(self) -> bool:
        return self.status is Status.SAT

    @property
    def subcubic(self) -> bool:
        return self.structural is not None

    @property
    def contradiction(self) -> bool:
        """Unsat, subcubic and below the density bound (meaningful for (1,1,2,2))."""
        return (self.status is Status.UNSAT and self.subcubic
                and self.mad is not None and self.mad < THRESHOLD)

    def as_record(self, spec: PackingSpec, witness: bool = False) -> dict:
        def rat(x):
            return None if x is None else format_rational(x)
        rec = {
            "index": self.index,
            "graph6": self.graph6,
            "n": self.n,
            "m": self.m,
            "mad": rat(self.mad),
            "girth": str(self.girth),
            "colorable": self.colorable,
            "status": self.status.value,
            "structural": self.structural,
            "initial_total": rat(self.initial_total),
            "final_total": rat(self.final_total),
            "min_final_charge": rat(self.min_final_charge),
        }
        if witness:
            rec["spec"] = list(spec.s)
            rec["coloring"] = None if self.coloring is None else list(self.coloring)
        if self.elapsed_ms is not None:
            rec["elapsed_ms"] = round(self.elapsed_ms, 3)
        return rec


def passes(g: Graph, filters: Sequence[Filter], mad: Fraction | None) -> bool:
    for f in filters:
        if f.kind == "subcubic" and not g.is_subcubic():
            return False
        if f.kind == "connected" and not g.is_connected():
            return False
        if f.kind == "mad-lt" and (mad is None or not mad < f.value):
            return False
        if f.kind == "girth-ge":
            gg = girth(g)
            if gg is not Acyclic and gg < f.value:
                return False
    return True


def scan_one(index: int, g: Graph, filters: Sequence[Filter], spec: PackingSpec,
             budget: int = DEFAULT_BUDGET, timing: bool = False) -> ScanRow | None:
    """Row for one graph, or None if a filter rejects it."""
    t0 = time.perf_counter()
    mad = mad_exact(g)[0] if g.n else None
    if not passes(g, filters, mad):
        return None
    res = solve(g, spec, budget)
    if res.sat and verify_coloring(g, spec, res.coloring):
        raise AssertionError(f"solver returned an invalid colouring for {to_str(g)}")
    structural = init_total = final_total = min_final = None
    if g.is_subcubic():
        structural = structural_audit(g).summary()
        init = initial_charges(g)
        final = apply_discharging(g, init)
        init_total, final_total, min_final = init.total, final.total, final.minimum
    elapsed = (time.perf_counter() - t0) * 1000 if timing else None
    return ScanRow(index, to_str(g), g.n, g.m, mad, girth(g), res.status,
                   None if res.coloring is None else tuple(res.coloring.classes),
                   structural, init_total, final_total, min_final, elapsed)


def _scan_star(args):
    return scan_one(*args)


def scan(source: Iterable[Graph], filters: Sequence[Filter] = (),
         spec: PackingSpec = THEOREM_SPEC, *, workers: int = 1,
         budget: int = DEFAULT_BUDGET, timing: bool = False) -> Iterator[ScanRow]:
    """Rows for the graphs of ``source`` that pass ``filters``, in input order."""
    jobs = ((i, g, tuple(filters), spec, budget, timing) for i, g in enumerate(source))
    if workers <= 1:
        for job in jobs:
            row = _scan_star(job)
            if row is not None:
                yield row
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map() keeps input order; results are consumed as they arrive
        for row in pool.map(_scan_star, jobs, chunksize=16):
            if row is not None:
                yield row


@dataclass
class ScanSummary:
    rows: int = 0
    colorable: int = 0
    uncolorable: int = 0
    budget: int = 0
    contradictions: int = 0
    spec: PackingSpec = THEOREM_SPEC

    def add(self, row: ScanRow) -> None:
        self.rows += 1
        if row.status is Status.SAT:
            self.colorable += 1
        elif row.status is Status.UNSAT:
            self.uncolorable += 1
        else:
            self.budget += 1
        if row.contradiction and self.spec == THEOREM_SPEC:
            self.contradictions += 1

    @property
    def exit_code(self) -> int:
        if self.contradictions:
            return EXIT_CONTRADICTION
        if self.budget:
            return EXIT_BUDGET
        return EXIT_OK

    def line(self) -> str:
        return (f"rows={self.rows} colorable={self.colorable} uncolorable={self.uncolorable} "
                f"budget={self.budget} contradictions={self.contradictions}")


def write_rows(rows: Iterable[ScanRow], out, fmt: str, spec: PackingSpec,
               summary: ScanSummary | None = None) -> ScanSummary:
    """Stream rows as ``csv`` or ``jsonl`` (JSON lines carry the witness)."""
    summary = summary if summary is not None else ScanSummary(spec=spec)
    writer = None
    for row in rows:
        summary.add(row)
        if fmt == "csv":
            rec = row.as_record(spec)
            if writer is None:
                fields = list(CSV_FIELDS) + (["elapsed_ms"] if "elapsed_ms" in rec else [])
                writer = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
                writer.writeheader()
            writer.writerow({k: ("" if v is None else v) for k, v in rec.items()})
        elif fmt == "jsonl":
            out.write(json.dumps(row.as_record(spec, witness=True), sort_keys=True) + "\n")
        else:
            raise ValueError(f"unknown format {fmt!r}")
    if fmt == "csv" and writer is None:
        csv.writer(out, lineterminator="\n").writerow(CSV_FIELDS)
    return summary


def render(rows: Iterable[ScanRow], fmt: str, spec: PackingSpec = THEOREM_SPEC) -> str:
    buf = io.StringIO()
    write_rows(rows, buf, fmt, spec)
    return buf.getvalue()


def recheck_witnesses(jsonl: str) -> list[str]:
    """graph6 strings whose stored colouring fails verification; uses the report alone."""
    from .graph6 import parse_graph6
    bad = []
    for line in jsonl.splitlines():
        if not line.strip():
            continue
        rec = json.loads(line)
        if not rec["colorable"]:
            continue
        g = parse_graph6(rec["graph6"])
        spec = PackingSpec(tuple(rec["spec"]))
        if verify_coloring(g, spec, PackingColoring(tuple(rec["coloring"]))):
            bad.append(rec["graph6"])
    return bad


@dataclass(frozen=True)
class ConsistencyReport:
    checked: int
    charge_sum: tuple[str, ...]
    negative_final: tuple[str, ...]
    lemmas_below_bound: tuple[str, ...]
    conservation: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not (self.charge_sum or self.negative_final or self.lemmas_below_bound
                    or self.conservation)

    def failures(self) -> dict[str, tuple[str, ...]]:
        out = {}
        for name in ("charge_sum", "negative_final", "lemmas_below_bound", "conservation"):
            if getattr(self, name):
                out[name] = getattr(self, name)
        return out


def theorem_consistency_check(rows: Iterable[ScanRow]) -> ConsistencyReport:
    """Exact checks on subcubic rows.

    The initial total is ``2m - 30n/11``, discharging moves charge without
    creating it, a graph meeting all four structural predicates has no
    negative final charge, and no such graph has mad below 30/11.
    """
    charge_sum, negative, below, conserve = [], [], [], []
    checked = 0
    for row in rows:
        if not row.subcubic:
            continue
        checked += 1
        if row.initial_total != 2 * row.m - THRESHOLD * row.n:
            charge_sum.append(row.graph6)
        if row.final_total != row.initial_total:
            conserve.append(row.graph6)
        if row.structural == "TTTT":
            if row.min_final_charge is not None and row.min_final_charge < 0:
                negative.append(row.graph6)
            if row.mad is not None and row.mad < THRESHOLD:
                below.append(row.graph6)
    return ConsistencyReport(checked, tuple(charge_sum), tuple(negative), tuple(below),
                             tuple(conserve))
