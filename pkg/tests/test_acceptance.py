"""The eight acceptance criteria, one test each.

Each test prints one PASS/FAIL line in the terminal summary.
"""

import random
import time
from fractions import Fraction

import pytest

from oracles import naive_colorable, naive_packing_number
from packcolor import harness as H
from packcolor import reducibility as R
from packcolor.density import R1_AMOUNT, R2_AMOUNT, THRESHOLD, mad_bruteforce, mad_exact
from packcolor.enumerate import enumerate_connected_subcubic, random_subcubic
from packcolor.graph import Graph, cycle, girth, petersen, prism, subdivide
from packcolor.graph6 import parse_graph6, write_graph6
from packcolor.packing import (PackingColoring, PackingSpec, Status, chi_p, lift_subdivision,
                               solve, spec_dominates, verify_coloring)

S1122 = PackingSpec((1, 1, 2, 2))
LIMIT_MIN = 30 * 60


@pytest.fixture(scope="module")
def graphs10():
    return [g for n in range(1, 11) for g in enumerate_connected_subcubic(n)]


@pytest.fixture(scope="module")
def rows10(graphs10):
    t0 = time.perf_counter()
    rows = list(H.scan(graphs10, workers=4))
    return rows, time.perf_counter() - t0


@pytest.mark.acceptance(1, "no uncolourable subcubic graph with mad < 30/11 on <= 10 vertices")
def test_theorem_at_desk_scale(graphs10):
    t0 = time.perf_counter()
    rows = list(H.scan(graphs10, [H.Filter.parse("mad-lt=30/11")], workers=4))
    summary = H.ScanSummary()
    for r in rows:
        summary.add(r)
    elapsed = time.perf_counter() - t0
    print(f"criterion 1: {summary.line()} in {elapsed:.1f}s")
    assert summary.rows > 1000
    assert summary.uncolorable == 0 and summary.contradictions == 0 and summary.budget == 0
    assert summary.rows == sum(1 for g in graphs10 if mad_exact(g)[0] < THRESHOLD)
    assert elapsed < LIMIT_MIN


@pytest.mark.acceptance(2, "Petersen is not (1,1,2,2)-colourable, prisms 3..8 are")
def test_petersen_exception():
    # replicates the cited Petersen result
    t0 = time.perf_counter()
    res = solve(petersen(), S1122)
    assert res.status is Status.UNSAT
    assert time.perf_counter() - t0 < 60
    for n in range(3, 9):
        res = solve(prism(n), S1122)
        assert res.sat and verify_coloring(prism(n), S1122, res.coloring) == []


@pytest.mark.acceptance(3, "every lemma configuration is reducible and the tool shapes are exhaustive")
def test_lemma_suite():
    t0 = time.perf_counter()
    total = 0
    for lemma in R.LEMMAS:
        cs = R.build_lemma_config(lemma)
        assert cs, lemma
        for c in cs:
            v = R.check_reducible(c)
            assert v.reducible, (c.describe(), v.to_json()["counterexample"])
            total += 1
        if lemma == "tool":
            for c in cs:
                rep = R.check_tool_shapes(c)
                assert rep.ok and rep.non_extendable == rep.shape1 + rep.shape2
    elapsed = time.perf_counter() - t0
    print(f"criterion 3: {total} configurations in {elapsed:.1f}s")
    assert elapsed < LIMIT_MIN


@pytest.mark.acceptance(4, "charges are exact and conserved; closing arithmetic is zero")
def test_discharging_exactness(rows10):
    rows, _ = rows10
    for r in rows:
        assert r.initial_total == 2 * r.m - Fraction(30, 11) * r.n
        assert r.final_total == r.initial_total
    assert 2 - THRESHOLD + 2 * R2_AMOUNT + 2 * R1_AMOUNT == 0
    assert 3 - THRESHOLD - max(R2_AMOUNT, 3 * R1_AMOUNT) == 0


@pytest.mark.acceptance(5, "all-true structure implies nonnegative final charge and mad >= 30/11")
def test_conditional_nonnegativity(rows10):
    rows, _ = rows10
    rep = H.theorem_consistency_check(rows)
    assert rep.ok, rep.failures()
    tttt = [r for r in rows if r.structural == "TTTT"]
    print(f"criterion 5: {len(tttt)} graphs with all predicates true out of {len(rows)}")
    assert tttt
    for r in tttt:
        assert r.min_final_charge >= 0 and r.mad >= THRESHOLD


@pytest.mark.acceptance(6, "lifted colourings verify on the subdivision; subdivided prism(4) example")
def test_subdivision_lift():
    rng = random.Random(2024)
    target = PackingSpec((1, 2, 3, 4, 5))
    done = 0
    while done < 120:
        g = random_subcubic(rng.randint(3, 16), rng)
        res = solve(g, S1122)
        if not res.sat:
            continue
        lift = lift_subdivision(g, S1122, res.coloring)
        assert lift.spec.s == (1, 3, 3, 5, 5)
        assert verify_coloring(lift.graph, lift.spec, lift.coloring) == []
        assert spec_dominates(lift.spec, target)
        assert verify_coloring(lift.graph, target, lift.coloring) == []
        done += 1
    d, _ = subdivide(prism(4))
    assert girth(d) == 8
    assert mad_exact(d)[0] == Fraction(12, 5) < THRESHOLD
    res = solve(d, S1122)
    assert res.sat and verify_coloring(d, S1122, res.coloring) == []


@pytest.mark.acceptance(7, "mad, solver and chi_p agree with brute-force oracles")
def test_oracle_equivalence(graphs10):
    for g in graphs10:
        assert mad_exact(g)[0] == mad_bruteforce(g)
    rng = random.Random(16)
    for _ in range(200):
        g = random_subcubic(rng.randint(1, 16), rng)
        assert mad_exact(g)[0] == mad_bruteforce(g)
    specs = [PackingSpec((1, 1)), PackingSpec((1, 2)), S1122]
    small = [g for g in graphs10 if g.n <= 7]
    # also some graphs that are not subcubic or connected
    for _ in range(60):
        n = rng.randint(1, 7)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4]
        small.append(Graph.from_edges(n, edges))
    for g in small:
        for spec in specs:
            res = solve(g, spec)
            assert res.status is not Status.BUDGET
            assert res.sat == naive_colorable(g, spec)
    for n in range(3, 21):
        assert chi_p(cycle(n), 8) == naive_packing_number(n)


@pytest.mark.acceptance(8, "scan output identical across worker counts; graph6 round trip n <= 7")
def test_engineering_determinism(graphs10):
    sample = graphs10[::7]
    one = H.render(H.scan(sample, workers=1), "csv")
    many = H.render(H.scan(sample, workers=4), "csv")
    assert one == many
    one = H.render(H.scan(sample, workers=1), "jsonl")
    many = H.render(H.scan(sample, workers=3), "jsonl")
    assert one == many
    for g in graphs10:
        if g.n > 7:
            break
        data = write_graph6(g)
        h = parse_graph6(data)
        assert h == g and write_graph6(h) == data
