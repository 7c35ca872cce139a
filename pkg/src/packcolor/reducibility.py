"""Mechanical reducibility checks for (1,1,2,2)-colouring configurations.

A :class:`Configuration` is a local picture of a host graph: ``deleted``
vertices are removed and must be re-coloured, ``interior`` vertices are shown
with their whole neighbourhood and may be recoloured, ``boundary`` vertices
are fixed and may have unseen neighbours.

A scenario is any colouring of the non-deleted vertices that is admissible
inside the picture. A repair colours the deleted vertices and possibly
recolours interior ones; a vertex may take a threshold-1 colour only if all
its neighbours are shown, and a threshold-2 colour only if its neighbours'
neighbours are shown too. A configuration is reducible when every scenario
has a repair.

Each lemma is described by a tree-shaped template; the configurations of a
lemma are all consistent identifications of that template (interior vertices
may coincide, a boundary leaf may be an interior vertex), de-duplicated up
to isomorphism and filtered by the structure established by earlier lemmas.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterator, Sequence

import numpy as np

from . import _kernels
from .enumerate import certificate
from .graph import Graph, bfs_order, ring_at

DELETED, INTERIOR, BOUNDARY = "deleted", "interior", "boundary"
_ROLE_CODE = {DELETED: 0, INTERIOR: 1, BOUNDARY: 2}

COLOR_NAMES = ("1a", "1b", "2a", "2b")
THRESHOLDS = np.array([1, 1, 2, 2], dtype=np.int64)

LEMMAS = ("min_degree", "adjacent_two", "tool", "two_neighbor", "special_n2")

DEFAULT_SCENARIO_CAP = 2_000_000_000
DEFAULT_FAIL_CAP = 100_000


class ReducibilityError(RuntimeError):
    """Search-space overflow or a malformed configuration."""


Scenario = tuple  # colour index 0..3 per vertex, None on deleted vertices


@dataclass(frozen=True)
class Configuration:
    name: str
    variant: int
    local: Graph
    roles: tuple[str, ...]
    host_degree: tuple[int, ...]
    labels: tuple[str, ...]
    excluded: Callable[["Configuration", Scenario], bool] | None = field(
        default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        n = self.local.n
        if not (len(self.roles) == len(self.host_degree) == len(self.labels) == n):
            raise ReducibilityError("roles/host_degree/labels must cover every vertex")
        for v in range(n):
            d = self.local.degree(v)
            if self.host_degree[v] < d:
                raise ReducibilityError(f"{self.labels[v]}: host degree below local degree")
            if self.roles[v] in (DELETED, INTERIOR) and self.host_degree[v] != d:
                raise ReducibilityError(f"{self.labels[v]}: {self.roles[v]} vertex not fully shown")

    @property
    def deleted(self) -> list[int]:
        return [v for v, r in enumerate(self.roles) if r == DELETED]

    @property
    def visible(self) -> list[int]:
        return [v for v, r in enumerate(self.roles) if r != DELETED]

    def full(self, v: int) -> bool:
        return self.host_degree[v] == self.local.degree(v)

    def scenario_order(self) -> list[int]:
        """Visible vertices in BFS order from the deleted set."""
        return [v for v in bfs_order(self.local, self.deleted) if self.roles[v] != DELETED]

    def describe(self) -> str:
        parts = [f"{self.labels[v]}[{self.roles[v][0]}{self.host_degree[v]}]"
                 for v in range(self.local.n)]
        edges = " ".join(f"{self.labels[u]}-{self.labels[v]}" for u, v in self.local.edges())
        return f"{self.name}#{self.variant}: {' '.join(parts)} | {edges}"


# -- array views -------------------------------------------------------------------

def _capped_distances(g: Graph, drop: set[int]) -> np.ndarray:
    out = np.full((g.n, g.n), 3, dtype=np.int64)
    sub, ids = g.delete(drop)
    dm = sub.distance_matrix(cap=2)
    for i, a in enumerate(ids):
        for j, b in enumerate(ids):
            out[a, b] = dm[i, j]
    for v in drop:
        out[v, v] = 0
    return out


@dataclass
class _Arrays:
    order: np.ndarray
    role: np.ndarray
    dl: np.ndarray
    dlp: np.ndarray
    safe: np.ndarray
    shrink: np.ndarray


def _arrays(c: Configuration) -> _Arrays:
    g = c.local
    dl = _capped_distances(g, set())
    dlp = _capped_distances(g, set(c.deleted))
    safe = np.zeros((g.n, 4), dtype=np.bool_)
    for v in range(g.n):
        if c.roles[v] == BOUNDARY:
            continue
        r1 = c.full(v)
        r2 = r1 and all(c.full(w) for w in g.adj[v])
        safe[v, 0] = safe[v, 1] = r1
        safe[v, 2] = safe[v, 3] = r2
    vis = c.visible
    shrink = [(a, b) for a, b in combinations(vis, 2) if dl[a, b] <= 2 < dlp[a, b]]
    return _Arrays(
        order=np.array(c.scenario_order(), dtype=np.int64),
        role=np.array([_ROLE_CODE[r] for r in c.roles], dtype=np.int64),
        dl=dl, dlp=dlp, safe=safe,
        shrink=np.array(shrink, dtype=np.int64).reshape(-1, 2),
    )


# -- scenarios ---------------------------------------------------------------------

def is_admissible(c: Configuration, scenario: Scenario) -> bool:
    """No equal threshold-1 colours on adjacent visible vertices, no equal
    threshold-2 colours within distance 2 once the deleted vertices are removed."""
    dlp = _capped_distances(c.local, set(c.deleted))
    vis = c.visible
    for a, b in combinations(vis, 2):
        ca, cb = scenario[a], scenario[b]
        if ca is None or cb is None:
            raise ReducibilityError("visible vertex without a colour")
        if ca == cb and dlp[a, b] <= THRESHOLDS[ca]:
            return False
    return all(scenario[v] is None for v in c.deleted)


def enumerate_scenarios(c: Configuration) -> Iterator[Scenario]:
    """Admissible colourings of the visible vertices, one per orbit of the
    swaps 1a<->1b and 2a<->2b, in depth-first order over :meth:`scenario_order`.

    The orbit representative is the colouring in which 1a appears before 1b
    and 2a before 2b along that order.
    """
    order = c.scenario_order()
    dlp = _capped_distances(c.local, set(c.deleted))
    colors: list[int | None] = [None] * c.local.n
    used = [0, 0, 0, 0]

    def rec(i: int) -> Iterator[Scenario]:
        if i == len(order):
            yield tuple(colors)
            return
        v = order[i]
        for col in range(4):
            if col in (1, 3) and not used[col - 1]:
                continue
            t = THRESHOLDS[col]
            if any(colors[y] == col and dlp[v, y] <= t for y in order[:i]):
                continue
            colors[v] = col
            used[col] += 1
            yield from rec(i + 1)
            used[col] -= 1
            colors[v] = None

    yield from rec(0)


def canonical_scenario(c: Configuration, scenario: Scenario) -> Scenario:
    """The orbit representative of ``scenario`` under the two colour swaps."""
    order = c.scenario_order()
    swap = {}
    for pair in ((0, 1), (2, 3)):
        first = next((scenario[v] for v in order if scenario[v] in pair), pair[0])
        if first == pair[1]:
            swap.update({pair[0]: pair[1], pair[1]: pair[0]})
    return tuple(None if x is None else swap.get(x, x) for x in scenario)


# -- repairs -----------------------------------------------------------------------

@dataclass(frozen=True)
class Repair:
    colors: tuple[int, ...]  # full colouring after the repair
    recolored: tuple[int, ...]  # interior vertices that changed


def find_repair(c: Configuration, scenario: Scenario, max_recolor: int | None = None) -> Repair | None:
    """A repair with as few recoloured interior vertices as possible, or None."""
    arr = _arrays(c)
    colors = np.array([-1 if x is None else x for x in scenario], dtype=np.int64)
    newcol = np.full(c.local.n, -1, dtype=np.int64)
    maxk = sum(r == INTERIOR for r in c.roles) if max_recolor is None else max_recolor
    k = _kernels.min_repair(colors, arr.role, arr.dl, arr.dlp, THRESHOLDS, arr.safe,
                            maxk, arr.shrink, newcol)
    if k < 0:
        return None
    full = []
    changed = []
    for v in range(c.local.n):
        if c.roles[v] == BOUNDARY:
            full.append(int(colors[v]))
        else:
            full.append(int(newcol[v]))
            if c.roles[v] == INTERIOR and newcol[v] != colors[v]:
                changed.append(v)
    return Repair(tuple(full), tuple(changed))


def repair_is_valid(c: Configuration, scenario: Scenario, repair: Repair) -> bool:
    """Independent re-check of a repair: safety of every changed vertex and
    admissibility of the repaired colouring on the whole configuration."""
    g = c.local
    dl = _capped_distances(g, set())
    for v in range(g.n):
        new = repair.colors[v]
        if c.roles[v] == BOUNDARY and new != scenario[v]:
            return False
        changed = c.roles[v] == DELETED or new != scenario[v]
        if not changed:
            continue
        if not c.full(v):
            return False
        if THRESHOLDS[new] == 2 and not all(c.full(w) for w in g.adj[v]):
            return False
    for a, b in combinations(range(g.n), 2):
        ca, cb = repair.colors[a], repair.colors[b]
        if ca == cb and dl[a, b] <= THRESHOLDS[ca]:
            return False
    return True


@dataclass(frozen=True)
class Verdict:
    config: Configuration
    reducible: bool
    scenarios: int
    excluded: int
    counterexample: Scenario | None
    max_repair_size: int
    pruned: int
    seconds: float

    def to_json(self) -> dict:
        ce = None
        if self.counterexample is not None:
            ce = {self.config.labels[v]: COLOR_NAMES[x]
                  for v, x in enumerate(self.counterexample) if x is not None}
        return {
            "lemma": self.config.name,
            "variant": self.config.variant,
            "verdict": "reducible" if self.reducible else "counterexample",
            "scenarios": self.scenarios,
            "excluded": self.excluded,
            "counterexample": ce,
            "max_repair_size": self.max_repair_size,
            "vertices": self.config.local.n,
            "seconds": round(self.seconds, 3),
        }


def check_reducible(c: Configuration, max_recolor: int | None = None, *,
                    prune: bool = True, count: bool = True,
                    scenario_cap: int = DEFAULT_SCENARIO_CAP,
                    fail_cap: int = DEFAULT_FAIL_CAP) -> Verdict:
    """Decide whether every scenario of ``c`` admits a repair.

    Scenarios accepted by ``c.excluded`` (the lemma's own conclusion, when it
    is a classification rather than a reducibility statement) are skipped.
    """
    t0 = time.perf_counter()
    arr = _arrays(c)
    n_int = sum(r == INTERIOR for r in c.roles)
    maxk = n_int if max_recolor is None else max_recolor
    cap = fail_cap if c.excluded is not None else 1
    total, nfail, fails, kmax, pruned, _ = _kernels.reduce_search(
        arr.order, arr.role, arr.dl, arr.dlp, THRESHOLDS, arr.safe, maxk, arr.shrink,
        prune, count, cap)
    if count and total > scenario_cap:
        raise ReducibilityError(f"{c.name}#{c.variant}: {total} scenarios exceed cap {scenario_cap}")
    failing = []
    if nfail > cap:
        if c.excluded is None:
            nfail = cap
        else:
            raise ReducibilityError(
                f"{c.name}#{c.variant}: more than {cap} unrepaired scenarios; raise fail_cap")
    for row in fails[:nfail]:
        sc = tuple(None if c.roles[v] == DELETED else int(row[v]) for v in range(c.local.n))
        failing.append(sc)
    excluded = 0
    first = None
    for sc in failing:
        if c.excluded is not None and c.excluded(c, sc):
            excluded += 1
            continue
        first = sc
        break
    return Verdict(c, first is None, int(total), excluded, first, int(kmax), int(pruned),
                   time.perf_counter() - t0)


def count_scenarios(c: Configuration) -> int:
    arr = _arrays(c)
    colors = np.full(c.local.n, -1, dtype=np.int64)
    used = np.zeros(4, dtype=np.int64)
    return int(_kernels.count_completions(colors, used, arr.order, 0, arr.dlp, THRESHOLDS))


# -- templates and their identifications ------------------------------------------

@dataclass
class _Node:
    label: str
    role: str
    degree: int | None = None  # deleted / interior
    degset: frozenset[int] = frozenset({2, 3})  # boundary leaves


class Template:
    """Tree-like drawing of a lemma; interior and deleted nodes list all neighbours."""

    def __init__(self) -> None:
        self.nodes: list[_Node] = []
        self.edges: list[tuple[int, int]] = []
        self.index: dict[str, int] = {}

    def add(self, label: str, role: str, degree=None, parents: Sequence[str] = (),
            degset=frozenset({2, 3})) -> None:
        self.index[label] = len(self.nodes)
        self.nodes.append(_Node(label, role, degree, frozenset(degset)))
        for p in parents:
            self.edges.append((self.index[p], self.index[label]))

    def leaves(self, parent: str, count: int, prefix: str, degset=frozenset({2, 3})) -> None:
        for i in range(count):
            self.add(f"{prefix}{i + 1}" if count > 1 else prefix, BOUNDARY, parents=[parent],
                     degset=degset)

    def check(self) -> None:
        deg = [0] * len(self.nodes)
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        for i, nd in enumerate(self.nodes):
            if nd.role != BOUNDARY and deg[i] != nd.degree:
                raise ReducibilityError(f"template node {nd.label} drawn with {deg[i]} of {nd.degree} edges")
            if nd.role == BOUNDARY and deg[i] != 1:
                raise ReducibilityError(f"template leaf {nd.label} must have one edge")


@dataclass
class _Class:
    role: str
    degree: int | None
    degset: frozenset[int]
    members: list[int]
    nbrs: set[int] = field(default_factory=set)


def identifications(t: Template) -> Iterator[tuple[Graph, list[str], list[int], list[str], dict[str, int]]]:
    """All consistent quotients of ``t``.

    Interior/deleted nodes may merge with earlier interior/deleted classes of
    the same degree; a leaf may become an interior/deleted vertex, or coincide
    with another leaf hanging off the same vertex. Neighbours of one node
    never merge with each other. Every interior/deleted
    class must end with exactly its degree of distinct neighbours.

    Yields ``(graph, roles, host_degree, labels, node_to_vertex)``.
    """
    t.check()
    core = [i for i, nd in enumerate(t.nodes) if nd.role != BOUNDARY]
    leaves = [i for i, nd in enumerate(t.nodes) if nd.role == BOUNDARY]
    adj: dict[int, list[int]] = {i: [] for i in range(len(t.nodes))}
    for a, b in t.edges:
        adj[a].append(b)
        adj[b].append(a)
    order = core + leaves
    cls_of: dict[int, int] = {}
    classes: list[_Class] = []

    def cap(cl: _Class) -> int:
        return cl.degree if cl.degree is not None else max(cl.degset)

    def attach(i: int, ci: int) -> list[tuple[int, int]] | None:
        """Add node i to class ci; returns undo info or None if inconsistent."""
        # distinct template neighbours of any node stay distinct vertices
        placed = [cls_of[j] for j in adj[i] if j in cls_of]
        if len(set(placed)) != len(placed):
            return None
        for j in adj[i]:
            if j in cls_of and any(cls_of.get(y) == ci for y in adj[j] if y != i):
                return None
        added = []
        for j in adj[i]:
            if j not in cls_of:
                continue
            cj = cls_of[j]
            if cj == ci:
                for a, b in added:
                    classes[a].nbrs.discard(b)
                return None
            for a, b in ((ci, cj), (cj, ci)):
                if b not in classes[a].nbrs:
                    classes[a].nbrs.add(b)
                    added.append((a, b))
        for a, _ in added:
            if len(classes[a].nbrs) > cap(classes[a]):
                for x, y in added:
                    classes[x].nbrs.discard(y)
                return None
        return added

    def rec(pos: int) -> Iterator:
        if pos == len(order):
            if all(len(cl.nbrs) == cl.degree for cl in classes if cl.role != BOUNDARY):
                yield _materialise(t, classes, cls_of)
            return
        i = order[pos]
        nd = t.nodes[i]
        options: list[int] = []
        if nd.role != BOUNDARY:
            if nd.role != DELETED:
                options = [ci for ci, cl in enumerate(classes)
                           if cl.role != BOUNDARY and cl.degree == nd.degree]
        else:
            (p,) = adj[i]
            cp = cls_of[p]
            for ci, cl in enumerate(classes):
                if ci == cp:
                    continue
                if cl.role != BOUNDARY:
                    if cl.degree in nd.degset:
                        options.append(ci)
                elif cp in cl.nbrs and cl.degset & nd.degset:
                    options.append(ci)
        # fresh vertex first, then merges in class order
        new = _Class(nd.role, nd.degree, nd.degset, [i])
        classes.append(new)
        cls_of[i] = len(classes) - 1
        undo = attach(i, len(classes) - 1)
        if undo is not None:
            yield from rec(pos + 1)
            for a, b in undo:
                classes[a].nbrs.discard(b)
        del cls_of[i]
        classes.pop()
        for ci in options:
            cl = classes[ci]
            saved = (cl.role, cl.degset)
            if nd.role == BOUNDARY and cl.role == BOUNDARY:
                cl.degset = cl.degset & nd.degset
            cl.members.append(i)
            cls_of[i] = ci
            undo = attach(i, ci)
            if undo is not None:
                yield from rec(pos + 1)
                for a, b in undo:
                    classes[a].nbrs.discard(b)
            del cls_of[i]
            cl.members.pop()
            cl.role, cl.degset = saved

    yield from rec(0)


def _materialise(t: Template, classes: list[_Class], cls_of: dict[int, int]):
    n = len(classes)
    edges = set()
    for a, cl in enumerate(classes):
        for b in cl.nbrs:
            if a < b:
                edges.add((a, b))
    g = Graph.from_edges(n, edges)
    roles = [cl.role for cl in classes]
    host = []
    for cl in classes:
        host.append(cl.degree if cl.role != BOUNDARY else max(cl.degset))
    labels = ["=".join(t.nodes[i].label for i in cl.members) for cl in classes]
    node_to_vertex = {t.nodes[i].label: c for i, c in cls_of.items()}
    return g, roles, host, labels, node_to_vertex


# -- earlier-lemma structure ------------------------------------------------------

def _known_degree(roles, host, g: Graph, v: int) -> int | None:
    if roles[v] != BOUNDARY or host[v] == g.degree(v):
        return host[v]
    return None


def _violates_earlier(g: Graph, roles, host, upto: int) -> bool:
    """Does the picture contradict a lemma proved before lemma number ``upto``?

    0: minimum degree 2; 1: no adjacent 2-vertices; 3: at most one 2-neighbour.
    Only vertices whose degree is certain are judged.
    """
    deg = [_known_degree(roles, host, g, v) for v in range(g.n)]
    if upto > 0 and any(d is not None and d < 2 for d in deg):
        return True
    if upto > 1 and any(deg[a] == 2 and deg[b] == 2 for a, b in g.edges()):
        return True
    if upto > 3:
        for v in range(g.n):
            if deg[v] == 3 and sum(deg[w] == 2 for w in g.adj[v]) > 1:
                return True
    return False


# -- the lemma library ------------------------------------------------------------

def _t_min_degree() -> list[Template]:
    t = Template()
    t.add("v", DELETED, 1)
    t.add("u", BOUNDARY, parents=["v"], degset={1, 2, 3})
    return [t]


def _t_adjacent_two() -> list[Template]:
    out = []
    for du in (2, 3):
        for dv in (2, 3):
            t = Template()
            t.add("u", DELETED, 2)
            t.add("v", DELETED, 2, parents=["u"])
            t.add("u'", INTERIOR, du, parents=["u"])
            t.add("v'", INTERIOR, dv, parents=["v"])
            t.leaves("u'", du - 1, "p")
            t.leaves("v'", dv - 1, "q")
            out.append(t)
    return out


def _t_tool() -> list[Template]:
    t = Template()
    t.add("v", DELETED, 2)
    t.add("u", INTERIOR, 3, parents=["v"])
    t.add("w", INTERIOR, 3, parents=["v"])
    t.leaves("u", 2, "u")
    t.leaves("w", 2, "w")
    # leaves come out as u1, u2, w1, w2
    return [t]


def _t_two_neighbor() -> list[Template]:
    out = []
    for d2 in (2, 3):
        t = Template()
        t.add("u1", DELETED, 2)
        t.add("u2", INTERIOR, 3, parents=["u1"])
        t.add("v1", INTERIOR, 3, parents=["u1"])
        t.add("u3", INTERIOR, 2, parents=["u2"])
        t.add("v2", INTERIOR, d2, parents=["u2"])
        t.add("v3", INTERIOR, 3, parents=["u3"])
        t.leaves("v1", 2, "v1'")
        t.leaves("v2", d2 - 1, "v2'")
        t.leaves("v3", 2, "v3'")
        out.append(t)
    return out


_POSITIONS = (("v1", "u1"), ("v2", "u1"), ("v3", "u2"), ("v4", "u2"))


def _t_special_n2(nonspecial: Sequence[str]) -> Template:
    """``u`` deleted 2-vertex; positions in ``nonspecial`` are drawn as
    3-vertices with one 2-neighbour (whose other neighbour is shown in full)
    and one 3-neighbour shown in full."""
    t = Template()
    t.add("u", DELETED, 2)
    t.add("u1", INTERIOR, 3, parents=["u"])
    t.add("u2", INTERIOR, 3, parents=["u"])
    k = 0
    for pos, parent in _POSITIONS:
        if pos in nonspecial:
            t.add(pos, INTERIOR, 3, parents=[parent])
    for pos, parent in _POSITIONS:
        if pos in nonspecial:
            k += 1
            t.add(f"w{2 * k - 1}", INTERIOR, 2, parents=[pos])
            t.add(f"w{2 * k}", INTERIOR, 3, parents=[pos])
        else:
            t.add(pos, BOUNDARY, parents=[parent], degset={3})
    k = 0
    for pos, _ in _POSITIONS:
        if pos in nonspecial:
            k += 1
            t.add(f"x{2 * k - 1}", INTERIOR, 3, parents=[f"w{2 * k - 1}"])
    k = 0
    for pos, _ in _POSITIONS:
        if pos in nonspecial:
            k += 1
            t.leaves(f"w{2 * k}", 2, f"w{2 * k}.")
            t.leaves(f"x{2 * k - 1}", 2, f"x{2 * k - 1}.")
    return t


def _special_n2_keep(g: Graph, node_to_vertex: dict[str, int], nonspecial: Sequence[str]) -> bool:
    """Is this picture one the template for ``nonspecial`` is responsible for?

    With four distinct vertices at distance two from ``u``, at most one being
    special forces both on one side to be non-special (template ``v1, v2``).
    Otherwise, with ``r`` such vertices, exactly ``r - 1`` distinct ones are
    assumed non-special.
    """
    u = node_to_vertex["u"]
    ring = ring_at(g, u, 2)
    imgs = {node_to_vertex[p] for p in nonspecial}
    if len(imgs) != len(nonspecial) or not imgs <= ring:
        return False
    if len(ring) == 4:
        return tuple(nonspecial) == ("v1", "v2")
    return len(nonspecial) == max(len(ring) - 1, 0)


def _tool_conclusion(c: Configuration, sc: Scenario) -> bool:
    """The two shapes, with all side conditions, around the deleted 2-vertex."""
    return tool_shape(c, sc, side_conditions=True) is not None


def tool_shape(c: Configuration, sc: Scenario, side_conditions: bool = True) -> int | None:
    """1 or 2 if ``sc`` has the corresponding shape around the deleted vertex, else None."""
    g = c.local
    (v,) = c.deleted
    u, w = g.adj[v]
    fu, fw = sc[u], sc[w]
    near_u = {sc[x] for x in g.adj[u] if x != v}
    near_w = {sc[x] for x in g.adj[w] if x != v}
    if {fu, fw} == {0, 1}:
        if not side_conditions:
            return 1
        ring = {sc[x] for x in ring_at(g, v, 2)}
        if {0, 1} <= near_u | {fu} and {0, 1} <= near_w | {fw} and {2, 3} <= ring:
            return 1
        return None
    if fu == fw and fu in (2, 3):
        if not side_conditions:
            return 2
        lst_u = sorted(sc[x] for x in g.adj[u] if x != v)
        lst_w = sorted(sc[x] for x in g.adj[w] if x != v)
        if lst_u == [0, 1] and lst_w == [0, 1]:
            return 2
    return None


def _templates(lemma: str):
    """``(template, keep)`` pairs; ``keep`` filters identifications."""
    if lemma == "min_degree":
        return [(t, None) for t in _t_min_degree()]
    if lemma == "adjacent_two":
        return [(t, None) for t in _t_adjacent_two()]
    if lemma == "tool":
        return [(t, None) for t in _t_tool()]
    if lemma == "two_neighbor":
        return [(t, None) for t in _t_two_neighbor()]
    if lemma == "special_n2":
        out = []
        names = [p for p, _ in _POSITIONS]
        # the keep rule never asks for more than two non-special positions
        for r in range(0, 3):
            for ns in combinations(names, r):
                out.append((_t_special_n2(ns),
                            lambda g, m, ns=ns: _special_n2_keep(g, m, ns)))
        return out
    raise ReducibilityError(f"unknown lemma {lemma!r}; choose from {', '.join(LEMMAS)}")


def build_lemma_config(lemma: str, variant: int | None = None) -> list[Configuration]:
    """Configurations for ``lemma`` (all variants, or only ``variant``)."""
    rank = LEMMAS.index(lemma) if lemma in LEMMAS else None
    if rank is None:
        raise ReducibilityError(f"unknown lemma {lemma!r}; choose from {', '.join(LEMMAS)}")
    seen = set()
    out: list[Configuration] = []
    for template, keep in _templates(lemma):
        for g, roles, host, labels, mapping in identifications(template):
            if _violates_earlier(g, roles, host, rank):
                continue
            if keep is not None and not keep(g, mapping):
                continue
            key = certificate(g, [(r, h) for r, h in zip(roles, host)])
            if key in seen:
                continue
            seen.add(key)
            order = list(bfs_order(g, [v for v in range(g.n) if roles[v] == DELETED]))
            pos = {v: i for i, v in enumerate(order)}
            cfg = Configuration(
                name=lemma, variant=len(out), local=g.relabel([pos[v] for v in range(g.n)]),
                roles=tuple(roles[v] for v in order), host_degree=tuple(host[v] for v in order),
                labels=tuple(labels[v] for v in order),
                excluded=_tool_conclusion if lemma == "tool" else None)
            out.append(cfg)
    if variant is not None:
        if not 0 <= variant < len(out):
            raise ReducibilityError(f"{lemma} has variants 0..{len(out) - 1}")
        return [out[variant]]
    return out


@dataclass(frozen=True)
class ToolReport:
    non_extendable: int
    shape1: int
    shape2: int
    outside: tuple[Scenario, ...]
    unrepaired: int
    unrepaired_outside: tuple[Scenario, ...]

    @property
    def ok(self) -> bool:
        return not self.outside and not self.unrepaired_outside


def check_tool_shapes(c: Configuration) -> ToolReport:
    """Classify the tool configuration's scenarios.

    Scenarios where ``v`` cannot be coloured without touching anything else
    must have one of the two shapes; scenarios with no repair at all must also
    satisfy the shapes' side conditions.
    """
    g = c.local
    dels = c.deleted
    if len(dels) != 1 or g.degree(dels[0]) != 2:
        raise ReducibilityError("tool shapes need a single deleted 2-vertex")
    v = dels[0]
    if any(g.degree(x) != 3 or c.roles[x] != INTERIOR for x in g.adj[v]):
        raise ReducibilityError("tool shapes need two interior 3-neighbours")
    non_ext = s1 = s2 = unrep = 0
    outside = []
    unrep_outside = []
    for sc in enumerate_scenarios(c):
        direct = find_repair(c, sc, max_recolor=0)
        if direct is None:
            non_ext += 1
            shape = tool_shape(c, sc, side_conditions=False)
            if shape == 1:
                s1 += 1
            elif shape == 2:
                s2 += 1
            else:
                outside.append(sc)
            if find_repair(c, sc) is None:
                unrep += 1
                if tool_shape(c, sc, side_conditions=True) is None:
                    unrep_outside.append(sc)
    return ToolReport(non_ext, s1, s2, tuple(outside), unrep, tuple(unrep_outside))


def check_lemma(lemma: str, max_recolor: int | None = None) -> list[Verdict]:
    return [check_reducible(c, max_recolor) for c in build_lemma_config(lemma)]


def scenario_from_names(c: Configuration, names: dict[str, str]) -> Scenario:
    """Build a scenario from ``{label: '1a'|...}``; every visible vertex must be named."""
    out = []
    for v in range(c.local.n):
        if c.roles[v] == DELETED:
            out.append(None)
        else:
            out.append(COLOR_NAMES.index(names[c.labels[v]]))
    return tuple(out)


# -- replay in a concrete host ----------------------------------------------------

def pad_to_host(c: Configuration) -> Graph:
    """The configuration with pendant vertices added until every boundary
    vertex has its host degree. Vertex ids of ``c.local`` are kept."""
    edges = list(c.local.edges())
    n = c.local.n
    for v in range(c.local.n):
        for _ in range(c.host_degree[v] - c.local.degree(v)):
            edges.append((v, n))
            n += 1
    return Graph.from_edges(n, edges)


def replay_repair(c: Configuration, host: Graph, host_classes: Sequence[int | None]):
    """Apply the repair found for the scenario seen by ``c`` inside ``host``.

    ``host`` must contain ``c.local`` on its first vertices, with the deleted
    ones uncoloured in ``host_classes`` (1-based, ``None`` for uncoloured).
    Returns the repaired class list, or None if the scenario has no repair.
    """
    sc = tuple(None if c.roles[v] == DELETED else host_classes[v] - 1
               for v in range(c.local.n))
    rep = find_repair(c, sc)
    if rep is None:
        return None
    out = list(host_classes)
    for v in range(c.local.n):
        out[v] = rep.colors[v] + 1
    return out
