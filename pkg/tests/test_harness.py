import io
import json
import random
from fractions import Fraction

import pytest

from packcolor import harness as H
from packcolor.enumerate import enumerate_connected_subcubic, random_subcubic
from packcolor.graph import complete, cycle, petersen, prism, subdivide
from packcolor.graph6 import to_str
from packcolor.packing import PackingSpec, Status


def small_graphs(nmax):
    for n in range(1, nmax + 1):
        yield from enumerate_connected_subcubic(n)


def test_filter_parsing():
    assert H.Filter.parse("mad-lt=30/11").value == Fraction(30, 11)
    assert H.Filter.parse("girth-ge=5").value == 5
    assert str(H.Filter.parse("mad-lt=30/11")) == "mad-lt=30/11"
    for bad in ("mad-lt=x", "girth-ge=", "subcubic=1", "dense"):
        with pytest.raises(H.FilterError):
            H.Filter.parse(bad)


def test_filters_select_rows():
    gs = [cycle(5), complete(4), petersen(), prism(5)]
    rows = list(H.scan(gs, [H.Filter.parse("girth-ge=5")]))
    assert [r.index for r in rows] == [0, 2]
    rows = list(H.scan(gs, [H.Filter.parse("mad-lt=3")]))
    assert [r.index for r in rows] == [0]


def test_petersen_row():
    (row,) = H.scan([petersen()])
    assert row.colorable is False and row.status is Status.UNSAT
    assert row.mad == 3 and row.girth == 5
    assert row.structural == "TTTT"
    assert row.initial_total == Fraction(30, 11) == row.final_total
    assert row.min_final_charge == Fraction(3, 11)
    assert not row.contradiction


def test_subdivided_k4_charges():
    s, _ = subdivide(complete(4))
    (row,) = H.scan([s])
    assert row.initial_total == Fraction(-36, 11)
    assert row.colorable


def test_no_uncolorable_below_bound_small():
    rows = list(H.scan(small_graphs(8), [H.Filter.parse("mad-lt=30/11")]))
    assert rows
    assert all(r.colorable for r in rows)
    s = H.ScanSummary()
    for r in rows:
        s.add(r)
    assert s.exit_code == H.EXIT_OK and s.contradictions == 0


def test_empty_stream():
    out = io.StringIO()
    s = H.write_rows(H.scan([]), out, "csv", H.THEOREM_SPEC)
    assert s.rows == 0 and s.exit_code == 0
    assert out.getvalue() == ",".join(H.CSV_FIELDS) + "\n"
    assert H.render([], "jsonl") == ""


def test_summary_exit_codes():
    s = H.ScanSummary()
    row = next(H.scan([cycle(5)]))
    s.add(row)
    assert s.exit_code == 0
    s.add(row.__class__(**{**row.__dict__, "status": Status.BUDGET, "coloring": None}))
    assert s.exit_code == H.EXIT_BUDGET
    fake = row.__class__(**{**row.__dict__, "status": Status.UNSAT, "coloring": None})
    assert fake.contradiction
    s.add(fake)
    assert s.exit_code == H.EXIT_CONTRADICTION
    other = H.ScanSummary(spec=PackingSpec((1, 2, 3)))
    other.add(fake)
    assert other.contradictions == 0


def test_budget_rows():
    rows = list(H.scan([petersen()], budget=1))
    assert rows[0].status is Status.BUDGET


def test_output_is_deterministic_across_workers():
    rng = random.Random(3)
    gs = [random_subcubic(rng.randint(4, 12), rng) for _ in range(60)]
    a = H.render(H.scan(gs, workers=1), "csv")
    b = H.render(H.scan(gs, workers=3), "csv")
    assert a == b
    a = H.render(H.scan(gs, workers=1), "jsonl")
    b = H.render(H.scan(gs, workers=3), "jsonl")
    assert a == b


def test_timing_column_only_on_request():
    text = H.render(H.scan([cycle(5)], timing=True), "csv")
    assert text.splitlines()[0].endswith("elapsed_ms")
    assert "elapsed_ms" not in H.render(H.scan([cycle(5)]), "csv")


def test_jsonl_witnesses_recheck():
    rng = random.Random(5)
    gs = [random_subcubic(rng.randint(3, 11), rng) for _ in range(40)]
    text = H.render(H.scan(gs), "jsonl")
    assert H.recheck_witnesses(text) == []
    recs = [json.loads(x) for x in text.splitlines()]
    assert all(r["spec"] == [1, 1, 2, 2] for r in recs)
    # tamper with one witness
    for r in recs:
        if r["colorable"] and r["n"] >= 3:
            r["coloring"] = [1] * r["n"]
            bad = r["graph6"]
            break
    tampered = "\n".join(json.dumps(r) for r in recs)
    assert bad in H.recheck_witnesses(tampered)


def test_consistency_report():
    rows = list(H.scan(small_graphs(7)))
    rep = H.theorem_consistency_check(rows)
    assert rep.ok and rep.checked == len(rows)


def test_consistency_report_flags_bad_rows():
    row = next(H.scan([petersen()]))
    broken = row.__class__(**{**row.__dict__, "final_total": Fraction(1)})
    rep = H.theorem_consistency_check([broken])
    assert not rep.ok and "conservation" in rep.failures()


def test_graph6_column_round_trips():
    for row in H.scan([prism(4), cycle(7)]):
        assert row.graph6 in (to_str(prism(4)), to_str(cycle(7)))
