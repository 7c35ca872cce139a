"""Immutable simple graphs, BFS distances, girth, subdivision and generators."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np


class GraphError(ValueError):
    """Raised for malformed graphs or out-of-range generator parameters."""


class _AcyclicType:
    """Girth of a forest. A singleton, compared by identity."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Acyclic"

    def __str__(self) -> str:
        return "acyclic"

    def __reduce__(self):
        return (_AcyclicType, ())


Acyclic = _AcyclicType()


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the ascending tuple of neighbours of ``v``. Instances are
    hashable values; use :meth:`from_edges` rather than the raw constructor.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    _m: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise GraphError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        total = 0
        for v, row in enumerate(self.adj):
            prev = -1
            for w in row:
                if w <= prev:
                    raise GraphError(f"adjacency of {v} not strictly ascending")
                if w == v:
                    raise GraphError(f"self-loop at {v}")
                if not 0 <= w < self.n:
                    raise GraphError(f"neighbour {w} of {v} out of range")
                prev = w
            total += len(row)
        for v, row in enumerate(self.adj):
            for w in row:
                if v not in self.adj[w]:
                    raise GraphError(f"asymmetric adjacency {v}-{w}")
        object.__setattr__(self, "_m", total // 2)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} out of range for n={n}")
            if v in nbrs[u]:
                raise GraphError(f"duplicate edge {u}-{v}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @property
    def m(self) -> int:
        return self._m

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(row) for row in self.adj]

    def max_degree(self) -> int:
        return max((len(row) for row in self.adj), default=0)

    def min_degree(self) -> int:
        return min((len(row) for row in self.adj), default=0)

    def is_subcubic(self) -> bool:
        return self.max_degree() <= 3

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(distances_within(self, 0, self.n)) == self.n

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, relabelled in the order given."""
        index = {v: i for i, v in enumerate(vertices)}
        edges = [(index[u], index[w]) for u in vertices for w in self.adj[u]
                 if w in index and index[u] < index[w]]
        return Graph.from_edges(len(vertices), edges)

    def delete(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Remove ``vertices``; returns the graph and the kept original ids."""
        gone = set(vertices)
        keep = [v for v in range(self.n) if v not in gone]
        return self.induced(keep), keep

    def add_edge(self, u: int, v: int) -> "Graph":
        return Graph.from_edges(self.n, self.edges() + [(u, v)])

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def distance_matrix(self, cap: int | None = None) -> np.ndarray:
        """All-pairs BFS distances; unreachable (or beyond ``cap``) is ``cap + 1``.

        With ``cap=None`` unreachable pairs hold ``n + 1``.
        """
        big = self.n + 1 if cap is None else cap + 1
        out = np.full((self.n, self.n), big, dtype=np.int32)
        radius = self.n if cap is None else cap
        for s in range(self.n):
            for v, d in distances_within(self, s, radius).items():
                out[s, v] = d
        return out


def validate(g: Graph) -> None:
    """Re-check simplicity, symmetry and sortedness. Raises GraphError."""
    Graph(g.n, g.adj)


def distances_within(g: Graph, source: int, radius: int) -> dict[int, int]:
    """Truncated BFS: every vertex at distance at most ``radius`` from ``source``."""
    if radius < 0:
        raise GraphError("radius must be non-negative")
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        d = dist[v]
        if d == radius:
            continue
        for w in g.adj[v]:
            if w not in dist:
                dist[w] = d + 1
                queue.append(w)
    return dist


def ring_at(g: Graph, v: int, d: int) -> set[int]:
    """Vertices at distance exactly ``d`` from ``v``."""
    if d < 1:
        raise GraphError("ring distance must be at least 1")
    return {w for w, dw in distances_within(g, v, d).items() if dw == d}


def girth(g: Graph):
    """Length of a shortest cycle, or :data:`Acyclic` for a forest."""
    best = None
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            if best is not None and 2 * dist[v] + 1 >= best:
                break
            for w in g.adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif parent[v] != w:
                    length = dist[v] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return Acyclic if best is None else best


def subdivide(g: Graph) -> tuple[Graph, dict[tuple[int, int], int]]:
    """Subdivide every edge once.

    Original vertices keep their ids; the vertex placed on the ``i``-th edge of
    ``g.edges()`` gets id ``n + i``. The returned map is keyed by ``(u, v)``
    with ``u < v``.
    """
    edge_map: dict[tuple[int, int], int] = {}
    edges = []
    for i, (u, v) in enumerate(g.edges()):
        x = g.n + i
        edge_map[(u, v)] = x
        edges.append((u, x))
        edges.append((x, v))
    return Graph.from_edges(g.n + g.m, edges), edge_map


# -- generators --------------------------------------------------------------

def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    if not 1 <= n <= 4:
        raise GraphError("complete(n) is limited to 1 <= n <= 4")
    return Graph.from_edges(n, combinations(range(n), 2))


def petersen() -> Graph:
    """Kneser graph K(5,2): 2-subsets of {0..4}, adjacent when disjoint."""
    pairs = list(combinations(range(5), 2))
    edges = [(i, j) for i, j in combinations(range(len(pairs)), 2)
             if not set(pairs[i]) & set(pairs[j])]
    return Graph.from_edges(len(pairs), edges)


def prism(n: int) -> Graph:
    """C_n x K_2: outer cycle 0..n-1, inner cycle n..2n-1, spokes i - n+i."""
    if n < 3:
        raise GraphError("prism needs n >= 3")
    edges = []
    for i in range(n):
        j = (i + 1) % n
        edges += [(i, j), (n + i, n + j), (i, n + i)]
    return Graph.from_edges(2 * n, edges)


_KINDS = {"cycle": cycle, "path": path, "complete": complete, "prism": prism}


def generate(kind: str, n: int | None = None) -> Graph:
    """Build a named graph: ``cycle``, ``path``, ``complete``, ``prism`` (need ``n``) or ``petersen``."""
    if kind == "petersen":
        return petersen()
    if kind not in _KINDS:
        raise GraphError(f"unknown graph kind {kind!r}")
    if n is None:
        raise GraphError(f"{kind} needs a size parameter")
    return _KINDS[kind](n)


def parse_kind(text: str) -> Graph:
    """Parse ``petersen`` or ``cycle(5)`` / ``cycle:5`` style names."""
    text = text.strip()
    for sep in "(:":
        if sep in text:
            kind, _, rest = text.partition(sep)
            return generate(kind.strip(), int(rest.rstrip(")").strip()))
    return generate(text)


def bfs_order(g: Graph, sources: Sequence[int]) -> Iterator[int]:
    """Multi-source BFS order, ties broken by vertex id; unreachable vertices last."""
    seen = set(sources)
    queue = deque(sorted(sources))
    while queue:
        v = queue.popleft()
        yield v
        for w in g.adj[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    for v in range(g.n):
        if v not in seen:
            yield v
