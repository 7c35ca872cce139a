import random
from itertools import combinations, product

import pytest

from packcolor import reducibility as R
from packcolor.enumerate import certificate, random_subcubic
from packcolor.graph import Graph, petersen, ring_at
from packcolor.packing import PackingColoring, PackingSpec, solve, verify_coloring

S1122 = PackingSpec((1, 1, 2, 2))
SMALL_LEMMAS = ("min_degree", "adjacent_two", "tool", "two_neighbor")


@pytest.fixture(scope="module")
def configs():
    return {lem: R.build_lemma_config(lem) for lem in R.LEMMAS}


def naive_orbits(c):
    """Admissible colourings by brute force over 4^k, grouped into swap orbits."""
    vis = c.visible
    g = c.local
    sub, ids = g.delete(c.deleted)
    dm = sub.distance_matrix()
    pos = {v: i for i, v in enumerate(ids)}
    thr = (1, 1, 2, 2)
    orbits = set()
    total = 0
    for cols in product(range(4), repeat=len(vis)):
        ok = all(not (cols[i] == cols[j] and dm[pos[vis[i]], pos[vis[j]]] <= thr[cols[i]])
                 for i, j in combinations(range(len(vis)), 2))
        if not ok:
            continue
        total += 1
        images = []
        for s1, s2 in product((False, True), repeat=2):
            m = {0: 1 if s1 else 0, 1: 0 if s1 else 1, 2: 3 if s2 else 2, 3: 2 if s2 else 3}
            images.append(tuple(m[x] for x in cols))
        orbits.add(min(images))
    return total, len(orbits)


def as_scenario(c, cols):
    out = [None] * c.local.n
    for v, x in zip(c.visible, cols):
        out[v] = x
    return tuple(out)


# -- configuration library ------------------------------------------------------

def test_min_degree_shape(configs):
    (c,) = configs["min_degree"]
    assert c.local.n == 2 and c.roles == ("deleted", "boundary")
    assert c.host_degree == (1, 3)


def test_adjacent_two_includes_base_and_coincidences(configs):
    cs = configs["adjacent_two"]
    bases = [c for c in cs if c.local.n == 8]
    assert len(bases) == 1
    # u' = v' merged: a triangle u, v, x
    assert any(c.local.n == 3 for c in cs)


def test_variants_are_pairwise_non_isomorphic(configs):
    for lem, cs in configs.items():
        keys = [certificate(c.local, list(zip(c.roles, c.host_degree))) for c in cs]
        assert len(set(keys)) == len(keys), lem


def test_variants_respect_degrees_and_earlier_lemmas(configs):
    for rank, lem in enumerate(R.LEMMAS):
        for c in configs[lem]:
            g = c.local
            assert g.is_subcubic()
            for v in range(g.n):
                if c.roles[v] != R.BOUNDARY:
                    assert c.full(v)
            assert not R._violates_earlier(g, c.roles, c.host_degree, rank)


def test_special_n2_hypothesis_holds(configs):
    # the deleted 2-vertex sees at most one vertex at distance two that could be special
    for c in configs["special_n2"]:
        (u,) = c.deleted
        g = c.local
        ring = ring_at(g, u, 2)
        possibly_special = [x for x in ring if c.roles[x] == R.BOUNDARY or
                            all(c.host_degree[w] == 3 and c.roles[w] != R.DELETED
                                or c.roles[w] == R.BOUNDARY for w in g.adj[x])]
        assert len(possibly_special) <= 1 or len(ring) == 4


def test_unknown_lemma_and_variant():
    with pytest.raises(R.ReducibilityError):
        R.build_lemma_config("nope")
    with pytest.raises(R.ReducibilityError):
        R.build_lemma_config("min_degree", 3)
    assert len(R.build_lemma_config("tool", 0)) == 1


def test_configuration_invariants_enforced():
    g = Graph.from_edges(2, [(0, 1)])
    with pytest.raises(R.ReducibilityError):
        R.Configuration("x", 0, g, ("deleted", "interior"), (1, 3), ("a", "b"))
    with pytest.raises(R.ReducibilityError):
        R.Configuration("x", 0, g, ("deleted", "boundary"), (1, 0), ("a", "b"))


# -- scenarios ------------------------------------------------------------------

def test_one_visible_vertex_two_scenarios(configs):
    (c,) = configs["min_degree"]
    assert list(R.enumerate_scenarios(c)) == [(None, 0), (None, 2)]


def test_scenario_counts_match_naive_oracle(configs):
    checked = 0
    for lem in R.LEMMAS:
        for c in configs[lem]:
            if len(c.visible) > 8:
                continue
            _, orbits = naive_orbits(c)
            emitted = list(R.enumerate_scenarios(c))
            assert len(emitted) == orbits == R.count_scenarios(c), c.describe()
            checked += 1
    assert checked > 20


def test_adjacent_two_small_base_count(configs):
    c = next(c for c in configs["adjacent_two"] if len(c.visible) == 4)
    assert len(list(R.enumerate_scenarios(c))) == naive_orbits(c)[1]


def test_tool_scenarios_are_admissible(configs):
    for c in configs["tool"]:
        for sc in R.enumerate_scenarios(c):
            assert R.is_admissible(c, sc)


def test_quotient_correctness(configs):
    for c in configs["tool"] + configs["adjacent_two"]:
        emitted = set(R.enumerate_scenarios(c))
        for sc in emitted:
            assert R.canonical_scenario(c, sc) == sc
            for s1, s2 in ((True, False), (False, True), (True, True)):
                m = {0: 1 if s1 else 0, 1: 0 if s1 else 1, 2: 3 if s2 else 2, 3: 2 if s2 else 3}
                img = tuple(None if x is None else m[x] for x in sc)
                if img != sc:
                    assert img not in emitted
        # every admissible colouring lies in an emitted orbit
        vis = c.visible
        if len(vis) <= 6:
            for cols in product(range(4), repeat=len(vis)):
                sc = as_scenario(c, cols)
                if R.is_admissible(c, sc):
                    assert R.canonical_scenario(c, sc) in emitted


# -- repairs --------------------------------------------------------------------

@pytest.mark.parametrize("lemma", SMALL_LEMMAS)
def test_small_lemmas_reducible(configs, lemma):
    for c in configs[lemma]:
        v = R.check_reducible(c)
        assert v.reducible, c.describe()


def test_min_degree_repair_is_the_obvious_one(configs):
    (c,) = configs["min_degree"]
    rep = R.find_repair(c, (None, 0))
    assert rep.colors == (1, 0) and rep.recolored == ()


def test_found_repairs_pass_independent_check(configs):
    rng = random.Random(0)
    for lem in SMALL_LEMMAS:
        for c in configs[lem]:
            scs = list(R.enumerate_scenarios(c))
            for sc in rng.sample(scs, min(40, len(scs))):
                rep = R.find_repair(c, sc)
                if rep is not None:
                    assert R.repair_is_valid(c, sc, rep)


def test_repair_minimality_small(configs):
    for c in configs["adjacent_two"]:
        for sc in R.enumerate_scenarios(c):
            rep = R.find_repair(c, sc)
            if rep and rep.recolored:
                assert R.find_repair(c, sc, max_recolor=len(rep.recolored) - 1) is None


def test_pruning_does_not_change_verdicts(configs):
    for c in configs["two_neighbor"][:8] + configs["adjacent_two"]:
        a = R.check_reducible(c, prune=True)
        b = R.check_reducible(c, prune=False)
        assert a.reducible == b.reducible and a.scenarios == b.scenarios


def test_broken_configuration_is_caught():
    # deleted 3-vertex v; neighbours a, b, c; d at distance two; all boundary
    g = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (1, 4)])
    c = R.Configuration("broken", 0, g, ("deleted",) + ("boundary",) * 4, (3, 3, 3, 3, 3),
                        ("v", "a", "b", "c", "d"))
    v = R.check_reducible(c)
    assert not v.reducible
    assert R.find_repair(c, v.counterexample) is None
    assert v.to_json()["verdict"] == "counterexample"
    # all four colours blocked at v and nothing around it may move
    sc = R.scenario_from_names(c, {"a": "2a", "b": "1a", "c": "1b", "d": "2b"})
    assert R.is_admissible(c, sc)
    assert R.find_repair(c, sc) is None


def test_petersen_neighbourhood_is_not_reducible():
    g = petersen()
    c = R.Configuration("petersen", 0, g, ("deleted",) + ("interior",) * 9, (3,) * 10,
                        tuple(map(str, range(10))))
    assert not R.check_reducible(c).reducible


def test_scenario_cap_is_a_hard_error(configs):
    c = configs["two_neighbor"][0]
    with pytest.raises(R.ReducibilityError, match="two_neighbor#0"):
        R.check_reducible(c, scenario_cap=10)


# -- tool shapes ----------------------------------------------------------------

def _tool_base(configs):
    return next(c for c in configs["tool"] if c.local.n == 7)


def test_tool_shape_examples(configs):
    c = _tool_base(configs)
    sc = R.scenario_from_names(c, {"u": "1a", "w": "1b", "w1": "1a", "w2": "2a",
                                   "u1": "1b", "u2": "2b"})
    assert R.find_repair(c, sc, max_recolor=0) is None
    assert R.tool_shape(c, sc) == 1
    sc = R.scenario_from_names(c, {"u": "2a", "w": "2a", "u1": "1a", "u2": "1b",
                                   "w1": "1a", "w2": "1b"})
    assert R.tool_shape(c, sc) == 2
    sc = R.scenario_from_names(c, {"u": "1a", "w": "2a", "u1": "1b", "u2": "2b",
                                   "w1": "1a", "w2": "1b"})
    assert R.find_repair(c, sc, max_recolor=0) is not None


def test_tool_shapes_classify_everything(configs):
    for c in configs["tool"]:
        rep = R.check_tool_shapes(c)
        assert rep.ok
        assert rep.non_extendable == rep.shape1 + rep.shape2


def test_tool_shapes_rejects_other_configs(configs):
    with pytest.raises(R.ReducibilityError):
        R.check_tool_shapes(configs["min_degree"][0])


def test_deletion_extension_matches_tool_shapes():
    # in real graphs: a colouring of G - v that cannot take v directly has one of the shapes
    rng = random.Random(41)
    seen = 0
    for _ in range(300):
        g = random_subcubic(rng.randint(6, 14), rng)
        for v in range(g.n):
            if g.degree(v) != 2 or any(g.degree(x) != 3 for x in g.adj[v]):
                continue
            sub, ids = g.delete([v])
            res = solve(sub, S1122)
            if not res.sat:
                continue
            cls = [None] * g.n
            for i, x in enumerate(ids):
                cls[x] = res.coloring.classes[i]
            extendable = any(
                not verify_coloring(g, S1122, PackingColoring(tuple(cls[:v] + [k] + cls[v + 1:])))
                for k in range(1, 5))
            u, w = g.adj[v]
            fu, fw = cls[u], cls[w]
            coarse = {fu, fw} == {1, 2} or (fu == fw and fu in (3, 4))
            if not extendable:
                assert coarse
                seen += 1
    assert seen > 0


# -- soundness in concrete hosts ---------------------------------------------------

@pytest.mark.parametrize("lemma", R.LEMMAS)
def test_repairs_replay_in_hosts(configs, lemma):
    seeds = range(2) if lemma == "special_n2" else range(4)
    replayed = 0
    for c in configs[lemma]:
        host = R.pad_to_host(c)
        sub, ids = host.delete(c.deleted)
        for seed in seeds:
            res = solve(sub, S1122, restarts=1, seed=seed)
            if not res.sat:
                break
            cls = [None] * host.n
            for i, x in enumerate(ids):
                cls[x] = res.coloring.classes[i]
            out = R.replay_repair(c, host, cls)
            if out is None:
                assert c.excluded is not None
                continue
            assert verify_coloring(host, S1122, PackingColoring(tuple(out))) == []
            replayed += 1
    assert replayed > 0
