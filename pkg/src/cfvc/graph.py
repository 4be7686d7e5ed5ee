"""Simple undirected graphs, DIMACS-style I/O and the structural helpers
used by the verifier, the solvers and the gadget builders.

Vertices are ``0..n-1`` internally; the text format is 1-indexed.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import DisconnectedGraphError, FormatError

UNREACHABLE = -1


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]
    _nbr_sets: tuple[frozenset[int], ...] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        if len(self.adjacency) != self.n:
            raise ValueError(f"adjacency has {len(self.adjacency)} rows, expected {self.n}")
        adj = tuple(tuple(row) for row in self.adjacency)
        sets = []
        for u, row in enumerate(adj):
            if list(row) != sorted(set(row)):
                raise ValueError(f"neighbors of {u} must be sorted and distinct")
            for v in row:
                if not 0 <= v < self.n:
                    raise ValueError(f"neighbor {v} of {u} out of range")
                if v == u:
                    raise ValueError(f"self-loop at {u}")
            sets.append(frozenset(row))
        for u, row in enumerate(adj):
            for v in row:
                if u not in sets[v]:
                    raise ValueError(f"asymmetric adjacency: {u}->{v}")
        object.__setattr__(self, "adjacency", adj)
        object.__setattr__(self, "_nbr_sets", tuple(sets))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph; duplicate edges (in either orientation) are rejected."""
        rows: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if v in rows[u]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            rows[u].add(v)
            rows[v].add(u)
        return cls(n, tuple(tuple(sorted(r)) for r in rows))

    @property
    def m(self) -> int:
        return sum(len(r) for r in self.adjacency) // 2

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._nbr_sets[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbr_sets[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, row in enumerate(self.adjacency):
            for v in row:
                if u < v:
                    yield (u, v)

    def induced_subgraph(self, keep: Iterable[int]) -> tuple["Graph", dict[int, int]]:
        """Subgraph induced by ``keep``, renumbered by ascending original index.

        Returns the subgraph and the old->new index map.
        """
        kept = sorted(set(keep))
        index = {v: i for i, v in enumerate(kept)}
        rows = tuple(
            tuple(sorted(index[w] for w in self.adjacency[v] if w in index)) for v in kept
        )
        return Graph(len(kept), rows), index

    def remove_vertices(self, drop: Iterable[int]) -> tuple["Graph", dict[int, int]]:
        gone = set(drop)
        return self.induced_subgraph(v for v in range(self.n) if v not in gone)


@dataclass(frozen=True)
class ShortestPathDag:
    source: int
    dist: tuple[int, ...]
    successors: tuple[tuple[int, ...], ...]
    # vertices in nondecreasing distance; unreachable ones omitted
    order: tuple[int, ...]


@dataclass(frozen=True)
class TwinClassPartition:
    classes: tuple[tuple[int, ...], ...]

    def class_of(self, v: int) -> tuple[int, ...]:
        for c in self.classes:
            if v in c:
                return c
        raise KeyError(v)


@dataclass(frozen=True)
class VertexCover:
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", tuple(sorted(set(self.members))))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, v: object) -> bool:
        return v in self.members

    def covers(self, g: Graph) -> bool:
        s = set(self.members)
        return all(v < g.n for v in s) and all(u in s or v in s for u, v in g.edges())


# -- I/O ---------------------------------------------------------------------

def parse_graph(text: str, source: str | None = None) -> Graph:
    """Parse the ``p edge`` format (comment lines start with ``c``)."""
    n = m = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise FormatError("duplicate header", lineno, source)
            if len(parts) != 4 or parts[1] != "edge":
                raise FormatError("malformed header, expected 'p edge <n> <m>'", lineno, source)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError("malformed header, expected 'p edge <n> <m>'", lineno, source) from None
            if n < 0 or m < 0:
                raise FormatError("negative count in header", lineno, source)
        elif parts[0] == "e":
            if n is None:
                raise FormatError("edge line before header", lineno, source)
            if len(parts) != 3:
                raise FormatError("malformed edge line, expected 'e <u> <v>'", lineno, source)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise FormatError("non-integer vertex index", lineno, source) from None
            for x in (u, v):
                if not 1 <= x <= n:
                    raise FormatError(f"vertex index {x} out of range 1..{n}", lineno, source)
            if u == v:
                raise FormatError(f"self-loop at vertex {u}", lineno, source)
            key = (min(u, v), max(u, v))
            if key in seen:
                raise FormatError(f"duplicate edge {key[0]}-{key[1]}", lineno, source)
            seen.add(key)
            edges.append((u - 1, v - 1))
        else:
            raise FormatError(f"unrecognized line type {parts[0]!r}", lineno, source)
    if n is None:
        raise FormatError("missing header 'p edge <n> <m>'", None, source)
    if len(edges) != m:
        raise FormatError(f"header declares {m} edges, found {len(edges)}", None, source)
    return Graph.from_edges(n, edges)


def write_graph(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


# -- distances ---------------------------------------------------------------

def bfs_distances(g: Graph, source: int) -> list[int]:
    dist = [UNREACHABLE] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in g.adjacency[x]:
            if dist[y] == UNREACHABLE:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def bfs_dag(g: Graph, source: int) -> ShortestPathDag:
    if not 0 <= source < g.n:
        raise ValueError(f"source {source} out of range")
    dist = [UNREACHABLE] * g.n
    dist[source] = 0
    order = [source]
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in g.adjacency[x]:
            if dist[y] == UNREACHABLE:
                dist[y] = dist[x] + 1
                order.append(y)
                queue.append(y)
    succ = tuple(
        tuple(y for y in g.adjacency[x] if dist[x] != UNREACHABLE and dist[y] == dist[x] + 1)
        for x in range(g.n)
    )
    return ShortestPathDag(source, tuple(dist), succ, tuple(order))


def all_pairs_distances(g: Graph) -> list[list[int]]:
    return [bfs_distances(g, s) for s in range(g.n)]


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    return UNREACHABLE not in bfs_distances(g, 0)


def require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise DisconnectedGraphError("graph is not connected")


def eccentricities(g: Graph) -> list[int]:
    require_connected(g)
    return [max(bfs_distances(g, s), default=0) for s in range(g.n)]


def diameter(g: Graph) -> int:
    return max(eccentricities(g), default=0)


def radius(g: Graph) -> int:
    return min(eccentricities(g), default=0)


def interval(dist_u: Sequence[int], dist_v: Sequence[int], d: int) -> list[int]:
    """Vertices lying on some shortest path between two vertices at distance ``d``,
    given the BFS distance rows of both endpoints."""
    return [w for w in range(len(dist_u))
            if dist_u[w] != UNREACHABLE and dist_v[w] != UNREACHABLE
            and dist_u[w] + dist_v[w] == d]


# -- structure ---------------------------------------------------------------

def false_twin_classes(g: Graph, subset: Iterable[int] | None = None) -> TwinClassPartition:
    """Group ``subset`` (default: all vertices) by identical open neighborhood."""
    verts = range(g.n) if subset is None else sorted(set(subset))
    buckets: dict[tuple[int, ...], list[int]] = {}
    for v in verts:
        buckets.setdefault(g.adjacency[v], []).append(v)
    classes = sorted((tuple(b) for b in buckets.values()), key=lambda c: c[0])
    return TwinClassPartition(tuple(classes))


def greedy_vertex_cover(g: Graph) -> VertexCover:
    """Endpoints of a maximal matching built by scanning edges in lexicographic
    order; at most twice the minimum cover."""
    matched: set[int] = set()
    for u, v in g.edges():
        if u not in matched and v not in matched:
            matched.update((u, v))
    return VertexCover(tuple(matched))


def bipartition(g: Graph) -> tuple[list[int], list[int]] | None:
    """A proper 2-coloring split of a connected graph, or None if not bipartite."""
    if g.n == 0:
        return [], []
    side = [-1] * g.n
    for root in range(g.n):
        if side[root] != -1:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in g.adjacency[x]:
                if side[y] == -1:
                    side[y] = 1 - side[x]
                    queue.append(y)
                elif side[y] == side[x]:
                    return None
    return [v for v in range(g.n) if side[v] == 0], [v for v in range(g.n) if side[v] == 1]


def is_bipartite(g: Graph) -> bool:
    return bipartition(g) is not None


def is_complete_bipartite(g: Graph) -> tuple[list[int], list[int]] | None:
    if g.n < 2:
        raise ValueError("complete bipartite recognition needs n >= 2")
    require_connected(g)
    parts = bipartition(g)
    if parts is None:
        return None
    a, b = parts
    if g.m != len(a) * len(b):
        return None
    return a, b


def is_simple_path(g: Graph) -> bool:
    """True iff ``g`` is a path (a single vertex counts)."""
    if g.n == 0 or not is_connected(g):
        return False
    degs = [len(r) for r in g.adjacency]
    return g.m == g.n - 1 and max(degs, default=0) <= 2
