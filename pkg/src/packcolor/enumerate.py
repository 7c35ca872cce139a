"""Canonical forms and isomorph-free enumeration of connected subcubic graphs.

The canonical form is a small individualisation-refinement search: colour
refinement to a stable ordered partition, then branch on every vertex of the
first smallest non-singleton cell. The certificate is the lexicographically
least relabelled (colours, edge list) over all leaves.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations
from typing import Hashable, Iterator, Sequence

from .graph import Graph, GraphError

MAX_BUILTIN_ORDER = 10


def _refine(adj: Sequence[Sequence[int]], cells: list[list[int]]) -> list[list[int]]:
    while True:
        cell_of = {}
        for i, cell in enumerate(cells):
            for v in cell:
                cell_of[v] = i
        out = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            sig = {v: tuple(sorted(cell_of[w] for w in adj[v])) for v in cell}
            keys = sorted(set(sig.values()))
            if len(keys) > 1:
                changed = True
                out.extend([v for v in cell if sig[v] == k] for k in keys)
            else:
                out.append(cell)
        cells = out
        if not changed:
            return cells


def canonical_labeling(g: Graph, colors: Sequence[Hashable] | None = None):
    """Return ``(certificate, position)`` with ``position[v]`` the canonical id of ``v``.

    Two vertex-coloured graphs are isomorphic (colour-preservingly) iff their
    certificates are equal. Colours must be mutually comparable.
    """
    if colors is None:
        colors = [0] * g.n
    keys = sorted(set(colors))
    start = [[v for v in range(g.n) if colors[v] == k] for k in keys]
    edges = g.edges()
    best: list = [None, None]

    def leaf(cells: list[list[int]]) -> None:
        pos = {cell[0]: i for i, cell in enumerate(cells)}
        col = tuple(colors[cell[0]] for cell in cells)
        es = tuple(sorted((min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in edges))
        cert = (col, es)
        if best[0] is None or cert < best[0]:
            best[0] = cert
            best[1] = [pos[v] for v in range(g.n)]

    def search(cells: list[list[int]]) -> None:
        cells = _refine(g.adj, cells)
        target = None
        for i, cell in enumerate(cells):
            if len(cell) > 1 and (target is None or len(cell) < len(cells[target])):
                target = i
        if target is None:
            leaf(cells)
            return
        cell = cells[target]
        for v in cell:
            rest = [w for w in cell if w != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    if g.n == 0:
        return ((), ()), []
    search([c for c in start if c])
    return best[0], best[1]


def certificate(g: Graph, colors: Sequence[Hashable] | None = None):
    return canonical_labeling(g, colors)[0]


def canonical_graph(g: Graph) -> Graph:
    _, pos = canonical_labeling(g)
    return g.relabel(pos)


def is_isomorphic(a: Graph, b: Graph) -> bool:
    return a.n == b.n and a.m == b.m and certificate(a) == certificate(b)


@lru_cache(maxsize=None)
def _level(n: int) -> tuple[Graph, ...]:
    if n == 1:
        return (Graph(1, ((),)),)
    seen = {}
    for h in _level(n - 1):
        free = [v for v in range(h.n) if h.degree(v) < 3]
        for r in range(1, 4):
            for attach in combinations(free, r):
                g = Graph.from_edges(n, h.edges() + [(v, n - 1) for v in attach])
                cert = certificate(g)
                if cert not in seen:
                    seen[cert] = g
    # Deterministic order: by edge count, then by certificate.
    out = []
    for cert in sorted(seen, key=lambda c: (len(c[1]), c)):
        g = seen[cert]
        out.append(canonical_graph(g))
    return tuple(out)


def enumerate_connected_subcubic(n: int) -> Iterator[Graph]:
    """One graph per isomorphism class of connected graphs on ``n`` vertices with max degree <= 3.

    Each connected graph has a non-cut vertex (a leaf of a spanning tree), so
    extending every class on ``n - 1`` vertices by one vertex reaches all classes.
    """
    if not 1 <= n <= MAX_BUILTIN_ORDER:
        raise GraphError(
            f"built-in enumeration covers 1 <= n <= {MAX_BUILTIN_ORDER}; "
            "for larger orders feed graph6 lines from an external generator")
    yield from _level(n)


def random_subcubic(n: int, rng: random.Random, density: float = 0.8) -> Graph:
    """Random graph with max degree <= 3 (not necessarily connected)."""
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    deg = [0] * n
    edges = []
    target = int(density * 3 * n / 2)
    for u, v in pairs:
        if len(edges) >= target:
            break
        if deg[u] < 3 and deg[v] < 3:
            edges.append((u, v))
            deg[u] += 1
            deg[v] += 1
    return Graph.from_edges(n, edges)
