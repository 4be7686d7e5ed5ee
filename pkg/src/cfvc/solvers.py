"""Exact search for strong cfvc k-colorings, the vertex-cover FPT pipeline and
the strong cfvc number.

The search enumerates proper colorings by backtracking in a fixed vertex
order.  A pair of vertices is decided as soon as every vertex on every
shortest path between them is colored, because the existence of a
conflict-free shortest path depends on nothing else; pairs that are decided
bad cut the branch.  Complete colorings are re-verified from scratch.
"""

from __future__ import annotations

import enum
import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field

from .errors import FormatError, InvalidCoverError
from .graph import (
    Graph,
    VertexCover,
    all_pairs_distances,
    false_twin_classes,
    greedy_vertex_cover,
    interval,
    is_complete_bipartite,
    require_connected,
)
from .verify import Coloring, parse_coloring, verify_strong_cfvc, write_coloring

log = logging.getLogger(__name__)


class Decision(enum.Enum):
    YES = "yes"
    NO = "no"
    BUDGET = "budget"


@dataclass(frozen=True)
class SolveConfig:
    node_budget: int | None = None
    symmetry_breaking: bool = True
    fast_fail_verify: bool = True
    parallel: bool = False
    # cut branches on pairs whose every shortest path is already colored
    interval_pruning: bool = True
    workers: int | None = None

    def __post_init__(self) -> None:
        if self.node_budget is not None and self.node_budget <= 0:
            raise ValueError("node_budget must be positive")


@dataclass(frozen=True)
class SolveOutcome:
    decision: Decision
    certificate: Coloring | None = None
    nodes_explored: int = 0
    k: int | None = None

    def __post_init__(self) -> None:
        if (self.decision is Decision.YES) != (self.certificate is not None):
            raise ValueError("a certificate is present iff the decision is yes")

    @property
    def yes(self) -> bool:
        return self.decision is Decision.YES


class BudgetExhausted(Exception):
    pass


# -- exact search ------------------------------------------------------------

def search_order(g: Graph) -> list[int]:
    """Vertex 0 first, then repeatedly the vertex with the most already-ordered
    neighbors (lowest index on ties)."""
    if g.n == 0:
        return []
    placed = [False] * g.n
    weight = [0] * g.n
    order = []
    nxt = 0
    for _ in range(g.n):
        order.append(nxt)
        placed[nxt] = True
        for w in g.adjacency[nxt]:
            weight[w] += 1
        best = -1
        for v in range(g.n):
            if not placed[v] and (best < 0 or weight[v] > weight[best]):
                best = v
        nxt = best
    return order


class _Search:
    def __init__(self, g: Graph, k: int, cfg: SolveConfig):
        self.g = g
        self.k = k
        self.cfg = cfg
        self.order = search_order(g)
        self.pos = [0] * g.n
        for i, v in enumerate(self.order):
            self.pos[v] = i
        # neighbors that precede each vertex in the search order
        self.earlier = [
            [w for w in g.adjacency[v] if self.pos[w] < self.pos[v]] for v in range(g.n)
        ]
        self.checks: list[list[tuple]] = [[] for _ in range(g.n)]
        if cfg.interval_pruning:
            self._plan_pair_checks()
        self.colors = [-1] * g.n
        self.nodes = 0

    def _plan_pair_checks(self) -> None:
        g = self.g
        dist = all_pairs_distances(g)
        for u in range(g.n):
            for v in range(u + 1, g.n):
                d = dist[u][v]
                # distance <= 2 pairs are conflict-free under any proper coloring
                if d < 3:
                    continue
                members = interval(dist[u], dist[v], d)
                inside = set(members)
                members.sort(key=lambda w: dist[u][w])
                steps = tuple(
                    (x, tuple(y for y in g.adjacency[x]
                              if y in inside and dist[u][y] == dist[u][x] + 1))
                    for x in members
                )
                close = max(self.pos[w] for w in members)
                self.checks[close].append((u, v, steps))

    def _pair_ok(self, u: int, v: int, steps: tuple) -> bool:
        a = self.colors
        full = (1 << self.k) - 1
        zero = {u: full & ~(1 << a[u])}
        once = {u: 1 << a[u]}
        for x, succ in steps:
            zx = zero.get(x, 0)
            ox = once.get(x, 0)
            for y in succ:
                bit = 1 << a[y]
                zero[y] = zero.get(y, 0) | (zx & ~bit)
                once[y] = once.get(y, 0) | (ox & ~bit) | (zx & bit)
        return once.get(v, 0) != 0

    def _checks_pass(self, p: int) -> bool:
        for u, v, steps in self.checks[p]:
            if not self._pair_ok(u, v, steps):
                return False
        return True

    def prefixes(self, depth: int) -> list[tuple[int, ...]]:
        """All partial colorings of the first ``depth`` search positions that
        survive pruning (used to split work across processes)."""
        out: list[tuple[int, ...]] = []

        def rec(p: int, top: int) -> None:
            if p == depth:
                out.append(tuple(self.colors[self.order[i]] for i in range(depth)))
                return
            for c in self._candidates(p, top):
                self.colors[self.order[p]] = c
                if self._checks_pass(p):
                    rec(p + 1, max(top, c))
            self.colors[self.order[p]] = -1

        rec(0, -1)
        return out

    def _candidates(self, p: int, top: int) -> list[int]:
        v = self.order[p]
        taken = {self.colors[w] for w in self.earlier[v]}
        limit = min(self.k, top + 2) if self.cfg.symmetry_breaking else self.k
        return [c for c in range(limit) if c not in taken]

    def run(self, prefix: tuple[int, ...] = ()) -> Coloring | None:
        top = -1
        for i, c in enumerate(prefix):
            self.colors[self.order[i]] = c
            top = max(top, c)
        return self._dfs(len(prefix), top)

    def _dfs(self, p: int, top: int) -> Coloring | None:
        g = self.g
        if p == g.n:
            f = Coloring(self.k, tuple(self.colors))
            if verify_strong_cfvc(g, f, fast_fail=self.cfg.fast_fail_verify).ok:
                return f
            return None
        v = self.order[p]
        budget = self.cfg.node_budget
        for c in self._candidates(p, top):
            self.nodes += 1
            if budget is not None and self.nodes > budget:
                raise BudgetExhausted
            self.colors[v] = c
            if self._checks_pass(p):
                found = self._dfs(p + 1, max(top, c))
                if found is not None:
                    return found
        self.colors[v] = -1
        return None


def _solve_subtree(g: Graph, k: int, cfg: SolveConfig, prefix: tuple[int, ...]):
    s = _Search(g, k, cfg)
    try:
        cert = s.run(prefix)
    except BudgetExhausted:
        return Decision.BUDGET, None, s.nodes
    return (Decision.YES if cert else Decision.NO), cert, s.nodes


def _solve_parallel(g: Graph, k: int, cfg: SolveConfig) -> SolveOutcome:
    planner = _Search(g, k, cfg)
    depth = min(g.n, 4)
    prefixes = planner.prefixes(depth)
    if not prefixes:
        return SolveOutcome(Decision.NO, None, 0, k)
    nodes = 0
    exhausted = False
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        futures = [pool.submit(_solve_subtree, g, k, cfg, pre) for pre in prefixes]
        for fut in as_completed(futures):
            decision, cert, used = fut.result()
            nodes += used
            if decision is Decision.YES:
                for other in futures:
                    other.cancel()
                return SolveOutcome(Decision.YES, cert, nodes, k)
            exhausted |= decision is Decision.BUDGET
    return SolveOutcome(Decision.BUDGET if exhausted else Decision.NO, None, nodes, k)


def solve_k(g: Graph, k: int, cfg: SolveConfig | None = None) -> SolveOutcome:
    """Decide whether ``g`` has a strong cfvc ``k``-coloring.

    With ``cfg.parallel`` the node budget applies to each subtree separately
    and the returned certificate may differ between runs.
    """
    cfg = cfg or SolveConfig()
    if k < 1:
        raise ValueError("k must be positive")
    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    require_connected(g)
    if cfg.parallel and g.n > 4:
        return _solve_parallel(g, k, cfg)
    decision, cert, nodes = _solve_subtree(g, k, cfg, ())
    return SolveOutcome(decision, cert, nodes, k)


def path_svcfc_closed_form(n: int) -> int:
    """ceil(log2(n + 1)) for the n-vertex path."""
    if n < 1:
        raise ValueError("n must be positive")
    return n.bit_length()


def svcfc_number(g: Graph, cfg: SolveConfig | None = None) -> SolveOutcome:
    """Least k admitting a strong cfvc k-coloring, with a certificate."""
    cfg = cfg or SolveConfig()
    require_connected(g)
    if g.n == 0:
        raise ValueError("graph must have at least one vertex")
    if g.n == 1:
        return SolveOutcome(Decision.YES, Coloring(1, (0,)), 0, 1)
    parts = is_complete_bipartite(g)
    if parts is not None:
        side = [0] * g.n
        for v in parts[1]:
            side[v] = 1
        return SolveOutcome(Decision.YES, Coloring(2, tuple(side)), 0, 2)
    cover = greedy_vertex_cover(g)
    ceiling = min(g.n, len(cover) + 1)
    nodes = 0
    for k in range(3, ceiling):
        out = solve_k(g, k, cfg)
        nodes += out.nodes_explored
        if out.decision is not Decision.NO:
            return SolveOutcome(out.decision, out.certificate, nodes, k)
    k = max(3, ceiling)
    if k == len(cover) + 1:
        return SolveOutcome(Decision.YES, trivial_cover_coloring(g, cover), nodes, k)
    return SolveOutcome(Decision.YES, Coloring(g.n, tuple(range(g.n))), nodes, k)


# -- vertex-cover parameterization -------------------------------------------

def _require_cover(g: Graph, x: VertexCover) -> None:
    if not x.covers(g):
        raise InvalidCoverError("the given vertex set is not a vertex cover")


def trivial_cover_coloring(g: Graph, x: VertexCover) -> Coloring:
    """Distinct colors on the cover, one shared extra color on the rest."""
    _require_cover(g, x)
    size = len(x)
    rank = {v: i for i, v in enumerate(x.members)}
    return Coloring(size + 1, tuple(rank.get(v, size) for v in range(g.n)))


@dataclass(frozen=True)
class KernelTrace:
    original_n: int
    # (removed vertex, surviving twin representative), original indexing
    removals: tuple[tuple[int, int], ...]
    index_map: dict[int, int] = field(hash=False)


def kernelize(g: Graph, k: int, x: VertexCover) -> tuple[Graph, KernelTrace]:
    """Trim every false-twin class outside the cover down to ``k + 1`` members,
    dropping the highest indices first."""
    if k < 1:
        raise ValueError("k must be positive")
    require_connected(g)
    _require_cover(g, x)
    outside = [v for v in range(g.n) if v not in x]
    removals = []
    for cls in false_twin_classes(g, outside).classes:
        if len(cls) > k + 1:
            rep = cls[0]
            removals.extend((u, rep) for u in reversed(cls[k + 1:]))
    kernel, index = g.remove_vertices(u for u, _ in removals)
    return kernel, KernelTrace(g.n, tuple(removals), index)


def kernel_size_bound(cover_size: int, k: int) -> int:
    return cover_size + (k + 1) * 2 ** cover_size


def lift_coloring(trace: KernelTrace, kernel_coloring: Coloring) -> Coloring:
    if len(kernel_coloring) != len(trace.index_map):
        raise ValueError(
            f"kernel coloring has {len(kernel_coloring)} entries, trace expects {len(trace.index_map)}"
        )
    colors = [-1] * trace.original_n
    for v, kv in trace.index_map.items():
        colors[v] = kernel_coloring[kv]
    for removed, rep in reversed(trace.removals):
        colors[removed] = colors[rep]
    if -1 in colors:
        raise ValueError("trace does not account for every original vertex")
    return Coloring(kernel_coloring.k, tuple(colors))


def solve_fpt(
    g: Graph, k: int, x: VertexCover | None = None, cfg: SolveConfig | None = None
) -> SolveOutcome:
    cfg = cfg or SolveConfig()
    require_connected(g)
    if x is None:
        x = greedy_vertex_cover(g)
    _require_cover(g, x)
    if k >= len(x) + 1:
        f = trivial_cover_coloring(g, x)
        return SolveOutcome(Decision.YES, Coloring(k, f.assignment), 0, k)
    kernel, trace = kernelize(g, k, x)
    log.debug("kernel: %d -> %d vertices", g.n, kernel.n)
    out = solve_k(kernel, k, cfg)
    if not out.yes:
        return SolveOutcome(out.decision, None, out.nodes_explored, k)
    lifted = lift_coloring(trace, out.certificate)
    if not verify_strong_cfvc(g, lifted, fast_fail=True).ok:
        raise AssertionError("lifted certificate failed verification")
    return SolveOutcome(Decision.YES, lifted, out.nodes_explored, k)


# -- text formats ------------------------------------------------------------

def write_outcome(out: SolveOutcome) -> str:
    parts = [f"result {out.decision.value}\n"]
    if out.certificate is not None:
        parts.append(write_coloring(out.certificate))
    parts.append(f"nodes {out.nodes_explored}\n")
    return "".join(parts)


def parse_outcome(text: str) -> SolveOutcome:
    decision = None
    nodes = 0
    block: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts:
            continue
        if parts[0] == "result" and len(parts) == 2:
            try:
                decision = Decision(parts[1])
            except ValueError:
                raise FormatError(f"unknown result {parts[1]!r}", lineno) from None
        elif parts[0] == "nodes" and len(parts) == 2:
            nodes = int(parts[1])
        elif parts[0] in ("s", "v"):
            block.append(raw)
        else:
            raise FormatError(f"unrecognized line {raw!r}", lineno)
    if decision is None:
        raise FormatError("missing 'result' line")
    cert = parse_coloring("\n".join(block)) if block else None
    k = cert.k if cert else None
    return SolveOutcome(decision, cert, nodes, k)


def write_trace(trace: KernelTrace) -> str:
    return "".join(f"rm {u + 1} {r + 1}\n" for u, r in trace.removals)


def parse_trace(text: str, original_n: int) -> KernelTrace:
    removals = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] != "rm" or len(parts) != 3:
            raise FormatError(f"expected 'rm <removed> <representative>', got {raw!r}", lineno)
        u, r = int(parts[1]) - 1, int(parts[2]) - 1
        if not (0 <= u < original_n and 0 <= r < original_n):
            raise FormatError("vertex out of range", lineno)
        removals.append((u, r))
    gone = {u for u, _ in removals}
    kept = [v for v in range(original_n) if v not in gone]
    return KernelTrace(original_n, tuple(removals), {v: i for i, v in enumerate(kept)})
