"""Brute-force oracles and graph generators shared by the test modules.

Everything here is deliberately naive and independent of the package's
algorithms (no BFS DAGs, no pruning) so it can serve as ground truth.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

import networkx as nx
import pytest

from cfvc.graph import Graph

INF = float("inf")


def from_nx(h: nx.Graph) -> Graph:
    mapping = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return Graph.from_edges(len(mapping), [(mapping[u], mapping[v]) for u, v in h.edges()])


@lru_cache(maxsize=None)
def connected_graphs(max_n: int, min_n: int = 1) -> tuple[Graph, ...]:
    """All connected graphs up to isomorphism with min_n..max_n vertices (n <= 7)."""
    assert max_n <= 7
    out = []
    for h in nx.graph_atlas_g():
        if min_n <= h.number_of_nodes() <= max_n and h.number_of_nodes() > 0 and nx.is_connected(h):
            out.append(from_nx(h))
    return tuple(out)


def random_connected_graph(rng: random.Random, n: int, p: float = 0.35) -> Graph:
    """Random spanning tree plus independent extra edges."""
    edges = set()
    verts = list(range(n))
    rng.shuffle(verts)
    for i in range(1, n):
        u, v = verts[i], verts[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.add((u, v))
    return Graph.from_edges(n, sorted(edges))


def floyd_warshall(g: Graph) -> list[list[float]]:
    d = [[0 if i == j else INF for j in range(g.n)] for i in range(g.n)]
    for u, v in g.edges():
        d[u][v] = d[v][u] = 1
    for w in range(g.n):
        for i in range(g.n):
            for j in range(g.n):
                if d[i][w] + d[w][j] < d[i][j]:
                    d[i][j] = d[i][w] + d[w][j]
    return d


def min_vertex_cover_size(g: Graph) -> int:
    edges = list(g.edges())
    for size in range(g.n + 1):
        for xs in itertools.combinations(range(g.n), size):
            s = set(xs)
            if all(u in s or v in s for u, v in edges):
                return size
    raise AssertionError("unreachable")


def proper_colorings(g: Graph, k: int):
    """Every proper coloring with colors 0..k-1 (no symmetry reduction)."""
    edges = list(g.edges())
    for colors in itertools.product(range(k), repeat=g.n):
        if all(colors[u] != colors[v] for u, v in edges):
            yield colors


def is_k_colorable(g: Graph, k: int) -> bool:
    return next(proper_colorings(g, k), None) is not None


def chromatic_number(g: Graph) -> int:
    k = 1
    while not is_k_colorable(g, k):
        k += 1
    return k


def planted_twin_graph(rng: random.Random, n: int, class_size: int) -> Graph:
    """Random connected graph on n - class_size + 1 vertices whose last vertex
    is then cloned so that ``class_size`` false twins share its neighborhood."""
    base_n = n - class_size + 1
    base = random_connected_graph(rng, base_n, p=0.3)
    anchor = base_n - 1
    edges = list(base.edges())
    for extra in range(base_n, n):
        edges += [(w, extra) for w in base.neighbors(anchor)]
    return Graph.from_edges(n, edges)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240601)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
