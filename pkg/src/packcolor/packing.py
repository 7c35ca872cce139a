"""Packing S-colourings: specs, verification, exact search and the subdivision lift."""

from __future__ import annotations

import enum
import json
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .graph import Graph, subdivide

DEFAULT_BUDGET = 50_000_000


class PackingError(ValueError):
    """Bad spec, bad colouring, or a colouring that does not fit its graph."""


class BudgetExceeded(RuntimeError):
    """The solver hit its node budget before deciding."""


@dataclass(frozen=True)
class PackingSpec:
    """Non-decreasing thresholds ``s``; class ``i`` needs pairwise distance > ``s[i]``."""

    s: tuple[int, ...]

    def __post_init__(self) -> None:
        s = tuple(int(x) for x in self.s)
        object.__setattr__(self, "s", s)
        if not s:
            raise PackingError("a packing spec needs at least one class")
        if any(x < 1 for x in s):
            raise PackingError(f"thresholds must be positive: {s}")
        if any(a > b for a, b in zip(s, s[1:])):
            raise PackingError(f"thresholds must be non-decreasing: {s}")

    @classmethod
    def parse(cls, text: str) -> "PackingSpec":
        try:
            return cls(tuple(int(t) for t in text.replace(" ", "").strip("()").split(",") if t))
        except ValueError:
            raise PackingError(f"cannot parse spec {text!r}") from None

    @property
    def k(self) -> int:
        return len(self.s)

    def __str__(self) -> str:
        return ",".join(map(str, self.s))


@dataclass(frozen=True)
class PackingColoring:
    """Class index (1-based) per vertex; ``None`` marks an uncoloured vertex."""

    classes: tuple[int | None, ...]

    @classmethod
    def total(cls, classes: Iterable[int]) -> "PackingColoring":
        return cls(tuple(int(c) for c in classes))

    @property
    def uncolored(self) -> frozenset[int]:
        return frozenset(v for v, c in enumerate(self.classes) if c is None)

    def is_total(self) -> bool:
        return all(c is not None for c in self.classes)

    def to_json(self, spec: PackingSpec) -> str:
        return json.dumps({"spec": list(spec.s), "classes": list(self.classes)})

    @staticmethod
    def from_json(text: str) -> tuple[PackingSpec, "PackingColoring"]:
        obj = json.loads(text)
        return PackingSpec(tuple(obj["spec"])), PackingColoring(tuple(obj["classes"]))


@dataclass(frozen=True)
class Violation:
    cls: int
    u: int
    v: int
    distance: int


def _distances(g: Graph, spec: PackingSpec) -> np.ndarray:
    return g.distance_matrix(cap=max(spec.s))


def verify_coloring(g: Graph, spec: PackingSpec, c: PackingColoring) -> list[Violation]:
    """All violating pairs, ordered by class then vertex pair. Empty means valid.

    A partial colouring is checked on its coloured vertices only.
    """
    if len(c.classes) != g.n:
        raise PackingError(f"colouring covers {len(c.classes)} vertices, graph has {g.n}")
    members: dict[int, list[int]] = {}
    for v, cls in enumerate(c.classes):
        if cls is None:
            continue
        if not 1 <= cls <= spec.k:
            raise PackingError(f"vertex {v} has class {cls} outside 1..{spec.k}")
        members.setdefault(cls, []).append(v)
    if not members:
        return []
    dist = _distances(g, spec)
    out = []
    for cls in sorted(members):
        s = spec.s[cls - 1]
        vs = members[cls]
        for i, u in enumerate(vs):
            for v in vs[i + 1:]:
                if dist[u, v] <= s:
                    out.append(Violation(cls, u, v, int(dist[u, v])))
    return out


class Status(enum.Enum):
    SAT = "sat"
    UNSAT = "unsat"
    BUDGET = "budget"


@dataclass(frozen=True)
class SolveResult:
    status: Status
    coloring: PackingColoring | None
    nodes: int

    @property
    def sat(self) -> bool:
        return self.status is Status.SAT


def _block_starts(spec: PackingSpec) -> np.ndarray:
    starts = []
    for i, t in enumerate(spec.s):
        starts.append(i if i == 0 or spec.s[i - 1] != t else starts[-1])
    return np.array(starts, dtype=np.int64)


def solver_order(g: Graph, rng: random.Random | None = None) -> list[int]:
    """Descending degree, then ascending id (ties shuffled when ``rng`` is given)."""
    keys = list(range(g.n))
    if rng is not None:
        rng.shuffle(keys)
        rank = {v: i for i, v in enumerate(keys)}
        return sorted(range(g.n), key=lambda v: (-g.degree(v), rank[v]))
    return sorted(range(g.n), key=lambda v: (-g.degree(v), v))


def solve(g: Graph, spec: PackingSpec, budget: int = DEFAULT_BUDGET, *,
          restarts: int = 0, seed: int | None = None) -> SolveResult:
    """Find a packing ``spec``-colouring of ``g`` or prove none exists.

    The default search is deterministic. With ``restarts > 0`` the budget is
    split over ``restarts + 1`` attempts whose tie-breaking order is shuffled
    from ``seed``; any attempt that finishes decides the instance.
    """
    if g.n == 0:
        return SolveResult(Status.SAT, PackingColoring(()), 0)
    dist = _distances(g, spec).astype(np.int64)
    thr = np.array(spec.s, dtype=np.int64)
    starts = _block_starts(spec)
    attempts = restarts + 1
    share = max(1, budget // attempts)
    total = 0
    for attempt in range(attempts):
        rng = random.Random((seed or 0) + attempt) if restarts else None
        order = np.array(solver_order(g, rng), dtype=np.int64)
        status, colors, nodes = _kernels.packing_search(dist, order, thr, starts, share)
        total += int(nodes)
        if status == _kernels.SAT:
            coloring = PackingColoring.total(int(x) + 1 for x in colors)
            return SolveResult(Status.SAT, coloring, total)
        if status == _kernels.UNSAT:
            return SolveResult(Status.UNSAT, None, total)
    return SolveResult(Status.BUDGET, None, total)


def chi_p(g: Graph, k_max: int, budget: int = DEFAULT_BUDGET) -> int | None:
    """Packing chromatic number, or ``None`` when it exceeds ``k_max``.

    Raises :class:`BudgetExceeded` if some ``k`` could not be decided.
    """
    if k_max < 1:
        raise PackingError("k_max must be at least 1")
    if g.n == 0:
        return 0
    for k in range(1, k_max + 1):
        res = solve(g, PackingSpec(tuple(range(1, k + 1))), budget)
        if res.status is Status.BUDGET:
            raise BudgetExceeded(f"undecided at k={k} after {res.nodes} nodes")
        if res.sat:
            return k
    return None


@dataclass(frozen=True)
class Lift:
    graph: Graph
    spec: PackingSpec
    coloring: PackingColoring
    class_map: dict[int, int]
    subdivision_class: int
    edge_map: dict[tuple[int, int], int]


def lift_subdivision(g: Graph, spec: PackingSpec, c: PackingColoring) -> Lift:
    """Turn a packing ``S``-colouring of ``g`` into a ``(1, 2s_1+1, ...)``-colouring of D(g).

    Subdivision vertices all take the threshold-1 class; original class ``i``
    moves to the slot of ``2 s_i + 1`` in the sorted spec (``class_map``).
    """
    if not c.is_total():
        raise PackingError("lift needs a total colouring")
    bad = verify_coloring(g, spec, c)
    if bad:
        raise PackingError(f"input colouring is invalid: {bad[0]}")
    tagged = [(1, 0)] + [(2 * s + 1, i + 1) for i, s in enumerate(spec.s)]
    tagged.sort()
    new_spec = PackingSpec(tuple(t for t, _ in tagged))
    slot = {old: new + 1 for new, (_, old) in enumerate(tagged)}
    d, edge_map = subdivide(g)
    classes = [slot[cls] for cls in c.classes] + [slot[0]] * g.m
    class_map = {old: new for old, new in slot.items() if old}
    return Lift(d, new_spec, PackingColoring.total(classes), class_map, slot[0], edge_map)


def spec_dominates(a: PackingSpec, b: PackingSpec) -> bool:
    """True iff every packing ``a``-colouring is a packing ``b``-colouring (same indices)."""
    return len(a.s) == len(b.s) and all(x >= y for x, y in zip(sorted(a.s), sorted(b.s)))


def colorings_equivalent_under_swaps(spec: PackingSpec, classes: Sequence[int]) -> list[tuple[int, ...]]:
    """All relabellings of ``classes`` by permutations inside equal-threshold blocks."""
    from itertools import permutations, product

    blocks: dict[int, list[int]] = {}
    for i, t in enumerate(spec.s):
        blocks.setdefault(t, []).append(i + 1)
    perms_per_block = [list(permutations(b)) for b in blocks.values()]
    out = []
    for combo in product(*perms_per_block):
        mapping = {}
        for block, perm in zip(blocks.values(), combo):
            mapping.update(zip(block, perm))
        out.append(tuple(mapping[x] for x in classes))
    return out
