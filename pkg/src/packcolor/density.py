"""Maximum average degree, the planar girth bound, and the 30/11 discharging audit.

All quantities are :class:`fractions.Fraction`; nothing here touches floats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels
from ._flow import FlowNetwork
from .graph import Graph, GraphError, ring_at

THRESHOLD = Fraction(30, 11)
R1_AMOUNT = Fraction(1, 11)
R2_AMOUNT = Fraction(3, 11)
BRUTEFORCE_LIMIT = 20


class DensityError(ValueError):
    pass


def format_rational(x: Fraction) -> str:
    """``p/q`` in lowest terms, always with a denominator (``3/1``)."""
    return f"{x.numerator}/{x.denominator}"


def format_eleventh(x: Fraction) -> str:
    """``p/11``; raises if ``x`` is not a multiple of 1/11."""
    scaled = x * 11
    if scaled.denominator != 1:
        raise DensityError(f"{x} is not a multiple of 1/11")
    return f"{scaled.numerator}/11"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


# -- maximum average degree -------------------------------------------------------

def _closure_profit(g: Graph, p: int, q: int) -> tuple[int, set[int]]:
    """max over S of ``2q|E(S)| - p|S|`` and a maximiser, via a closure min-cut.

    Source feeds each edge-node ``2q``; an edge-node needs both endpoints;
    each vertex-node costs ``p`` into the sink.
    """
    edges = g.edges()
    m = len(edges)
    s, t = 0, 1
    net = FlowNetwork(2 + m + g.n)
    inf = 2 * q * m + 1
    for i, (u, v) in enumerate(edges):
        node = 2 + i
        net.add_edge(s, node, 2 * q)
        net.add_edge(node, 2 + m + u, inf)
        net.add_edge(node, 2 + m + v, inf)
    for v in range(g.n):
        net.add_edge(2 + m + v, t, p)
    cut = net.max_flow(s, t)
    side = net.source_side(s)
    chosen = {v for v in range(g.n) if 2 + m + v in side}
    return 2 * q * m - cut, chosen


def _candidates(g: Graph) -> list[Fraction]:
    return sorted({Fraction(p, q) for q in range(1, g.n + 1) for p in range(0, 2 * g.m + 1)})


def mad_exact(g: Graph) -> tuple[Fraction, frozenset[int]]:
    """Exact mad(g) and a vertex set attaining it.

    Binary search over the fractions ``p/q`` (``q <= n``, ``p <= 2m``) that can
    be an average degree; each probe asks whether some S has density above
    the candidate.
    """
    if g.n == 0:
        raise DensityError("mad of the empty graph is undefined")
    cands = _candidates(g)
    lo, hi = 0, len(cands) - 1  # answer index in [lo, hi]
    while lo < hi:
        mid = (lo + hi) // 2
        lam = cands[mid]
        profit, _ = _closure_profit(g, lam.numerator, lam.denominator)
        if profit > 0:
            lo = mid + 1
        else:
            hi = mid
    mad = cands[lo]
    if lo == 0:
        return mad, frozenset(range(g.n))
    below = cands[lo - 1]
    _, witness = _closure_profit(g, below.numerator, below.denominator)
    return mad, frozenset(witness)


def density_of(g: Graph, vertices) -> Fraction:
    vs = set(vertices)
    e = sum(1 for u, v in g.edges() if u in vs and v in vs)
    return Fraction(2 * e, len(vs))


def mad_bruteforce(g: Graph) -> Fraction:
    """mad(g) by checking every non-empty induced subgraph (n <= 20)."""
    if g.n == 0:
        raise DensityError("mad of the empty graph is undefined")
    if g.n > BRUTEFORCE_LIMIT:
        raise DensityError(f"brute force limited to n <= {BRUTEFORCE_LIMIT}")
    adjmask = np.zeros(g.n, dtype=np.int64)
    for v in range(g.n):
        for w in g.adj[v]:
            adjmask[v] |= 1 << w
    edges = g.edges()
    eu = np.array([u for u, _ in edges], dtype=np.int64)
    ev = np.array([v for _, v in edges], dtype=np.int64)
    best, _ = _kernels.densest_by_size(adjmask, eu, ev, g.n)
    return max(Fraction(2 * int(best[s]), s) for s in range(1, g.n + 1))


def planar_mad_bound(girth: int) -> Fraction:
    """``2g/(g-2)``: planar graphs of girth ``g`` have mad below this."""
    if girth < 3:
        raise DensityError("girth must be at least 3")
    return Fraction(2 * girth, girth - 2)


# -- discharging ------------------------------------------------------------------

INITIAL = "initial"
FINAL = "final"


@dataclass(frozen=True)
class Transfer:
    rule: str
    giver: int
    receiver: int
    amount: Fraction


@dataclass(frozen=True)
class ChargeLedger:
    charges: tuple[Fraction, ...]
    stage: str
    transfers: tuple[Transfer, ...] = ()

    @property
    def total(self) -> Fraction:
        return sum(self.charges, Fraction(0))

    @property
    def minimum(self) -> Fraction | None:
        return min(self.charges) if self.charges else None


def initial_charges(g: Graph) -> ChargeLedger:
    return ChargeLedger(tuple(Fraction(g.degree(v)) - THRESHOLD for v in range(g.n)), INITIAL)


def is_special(g: Graph, v: int) -> bool:
    """A 3-vertex all of whose neighbours are 3-vertices."""
    return g.degree(v) == 3 and all(g.degree(w) == 3 for w in g.adj[v])


def discharge_transfers(g: Graph) -> list[Transfer]:
    """Rule applications in vertex order; R1 and R2 are evaluated independently."""
    out = []
    for v in range(g.n):
        if g.degree(v) != 3:
            continue
        if is_special(g, v):
            for w in sorted(ring_at(g, v, 2)):
                if g.degree(w) == 2:
                    out.append(Transfer("R1", v, w, R1_AMOUNT))
        else:
            for w in g.adj[v]:
                if g.degree(w) == 2:
                    out.append(Transfer("R2", v, w, R2_AMOUNT))
    return out


def apply_discharging(g: Graph, ledger: ChargeLedger) -> ChargeLedger:
    if ledger.stage != INITIAL:
        raise DensityError(f"expected an initial ledger, got stage {ledger.stage!r}")
    if len(ledger.charges) != g.n:
        raise DensityError("ledger does not match the graph")
    charges = list(ledger.charges)
    transfers = discharge_transfers(g)
    for t in transfers:
        charges[t.giver] -= t.amount
        charges[t.receiver] += t.amount
    return ChargeLedger(tuple(charges), FINAL, tuple(transfers))


# -- structural audit -------------------------------------------------------------

@dataclass(frozen=True)
class StructuralReport:
    min_degree_ok: bool
    no_adjacent_2_ok: bool
    two_neighbor_ok: bool
    special_in_N2_ok: bool
    witnesses: dict[str, tuple] = field(default_factory=dict)

    @property
    def all_ok(self) -> bool:
        return (self.min_degree_ok and self.no_adjacent_2_ok
                and self.two_neighbor_ok and self.special_in_N2_ok)

    def summary(self) -> str:
        """Four-character flag string, e.g. ``TTFT``."""
        flags = (self.min_degree_ok, self.no_adjacent_2_ok, self.two_neighbor_ok,
                 self.special_in_N2_ok)
        return "".join("T" if f else "F" for f in flags)


def structural_audit(g: Graph) -> StructuralReport:
    if not g.is_subcubic():
        raise GraphError("structural audit needs a subcubic graph")
    deg = g.degrees()
    low = tuple(v for v in range(g.n) if deg[v] < 2)
    adj2 = tuple((u, v) for u, v in g.edges() if deg[u] == 2 and deg[v] == 2)
    many2 = tuple(v for v in range(g.n)
                  if deg[v] == 3 and sum(deg[w] == 2 for w in g.adj[v]) > 1)
    lonely = tuple(u for u in range(g.n) if deg[u] == 2
                   and sum(is_special(g, x) for x in ring_at(g, u, 2)) < 2)
    witnesses = {}
    for name, wit in (("min_degree", low), ("no_adjacent_2", adj2),
                      ("two_neighbor", many2), ("special_in_N2", lonely)):
        if wit:
            witnesses[name] = wit
    return StructuralReport(not low, not adj2, not many2, not lonely, witnesses)
