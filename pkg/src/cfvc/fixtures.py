"""Small named graphs and formulas used by tests, the CLI and benchmarks."""

from __future__ import annotations

from .graph import Graph
from .reductions import PositiveCnf
from .verify import Coloring

# Non-monotone example: a strong cfvc 3-colorable graph with false twins u, v
# whose deletion of u leaves a graph that is not strong cfvc 3-colorable.
FIG1_NAMES = ("v1", "v2", "v2'", "v3", "u", "v", "v5", "v6", "v7", "v8")
FIG1_U = 4
FIG1_V = 5
_FIG1_EDGES = [
    (0, 1), (1, 3), (3, 5), (5, 6), (6, 7), (7, 8), (8, 9),
    (0, 2), (2, 3), (3, 4), (4, 6),
]
# printed labels 1, 2, 3 shifted down to 0, 1, 2
FIG1_COLORING = Coloring(3, (0, 1, 2, 0, 1, 2, 0, 2, 1, 0))


def fig1(minus_u: bool = False) -> Graph:
    g = Graph.from_edges(10, _FIG1_EDGES)
    if minus_u:
        g, _ = g.remove_vertices([FIG1_U])
    return g


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(p: int, q: int) -> Graph:
    """K_{p,q} with the p-side first."""
    return Graph.from_edges(p + q, [(i, p + j) for i in range(p) for j in range(q)])


def star(leaves: int) -> Graph:
    return complete_bipartite(1, leaves)


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


# Six variables u, v, w, x, y, z and clauses {u,v,x}, {w,y}, {w,x,z}, {v,x,y,z}.
FIG2_VARS = ("u", "v", "w", "x", "y", "z")


def fig2_formula() -> PositiveCnf:
    idx = {name: i for i, name in enumerate(FIG2_VARS)}
    clauses = ["uvx", "wy", "wxz", "vxyz"]
    return PositiveCnf(6, tuple(frozenset(idx[ch] for ch in c) for c in clauses))
