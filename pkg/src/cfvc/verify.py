"""Checking whether a vertex coloring is a strong conflict-free vertex-connection
coloring: proper, and every pair of distinct vertices is joined by some shortest
path on which at least one color occurs exactly once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ColoringError, FormatError, OracleCapError
from .graph import UNREACHABLE, Graph, ShortestPathDag, bfs_dag, require_connected


@dataclass(frozen=True)
class Coloring:
    k: int
    assignment: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignment", tuple(self.assignment))
        if self.k < 1:
            raise ColoringError(f"number of colors must be positive, got {self.k}")
        for v, c in enumerate(self.assignment):
            if not 0 <= c < self.k:
                raise ColoringError(f"vertex {v} has color {c} outside 0..{self.k - 1}")

    def __len__(self) -> int:
        return len(self.assignment)

    def __getitem__(self, v: int) -> int:
        return self.assignment[v]

    def colors_used(self) -> int:
        return len(set(self.assignment))

    def permuted(self, perm: Sequence[int]) -> "Coloring":
        return Coloring(self.k, tuple(perm[c] for c in self.assignment))


@dataclass(frozen=True)
class VerificationReport:
    proper: bool
    bad_pairs: tuple[tuple[int, int], ...]
    pairs_checked: int

    @property
    def ok(self) -> bool:
        return self.proper and not self.bad_pairs


def _check_size(g: Graph, f: Coloring) -> None:
    if len(f) != g.n:
        raise ColoringError(f"coloring has {len(f)} entries but graph has {g.n} vertices")


def is_proper(g: Graph, f: Coloring) -> bool:
    _check_size(g, f)
    a = f.assignment
    return all(a[u] != a[v] for u, v in g.edges())


def cf_shortest_path_exists(dag: ShortestPathDag, f: Coloring, u: int, v: int) -> bool:
    """Whether some shortest u,v-path carries some color exactly once.

    For each color c we walk the DAG over states (vertex, occurrences of c so
    far) with the count saturating at 2, and accept on (v, 1).
    """
    if dag.source != u:
        raise ValueError(f"DAG is rooted at {dag.source}, not {u}")
    if dag.dist[v] == UNREACHABLE:
        raise ValueError(f"vertex {v} is unreachable from {u}")
    a = f.assignment
    for c in range(f.k):
        states: dict[int, set[int]] = {u: {1 if a[u] == c else 0}}
        for x in dag.order:
            if dag.dist[x] >= dag.dist[v]:
                break
            counts = states.get(x)
            if not counts:
                continue
            for y in dag.successors[x]:
                bump = 1 if a[y] == c else 0
                states.setdefault(y, set()).update(min(2, cnt + bump) for cnt in counts)
        if 1 in states.get(v, ()):
            return True
    return False


def conflict_free_targets(dag: ShortestPathDag, f: Coloring) -> list[bool]:
    """For every target at once: does a conflict-free shortest path from the
    DAG source reach it?  Same state machine as :func:`cf_shortest_path_exists`,
    run for all colors in parallel as bitmasks (count 0 and count 1 sets;
    count >= 2 is dropped since it never accepts)."""
    a = f.assignment
    full = (1 << f.k) - 1
    zero = [0] * len(a)
    once = [0] * len(a)
    s = dag.source
    zero[s] = full & ~(1 << a[s])
    once[s] = 1 << a[s]
    for x in dag.order:
        zx, ox = zero[x], once[x]
        for y in dag.successors[x]:
            bit = 1 << a[y]
            zero[y] |= zx & ~bit
            once[y] |= (ox & ~bit) | (zx & bit)
    return [bool(o) for o in once]


def verify_strong_cfvc(g: Graph, f: Coloring, fast_fail: bool = False) -> VerificationReport:
    """Verify ``f`` on ``g``.

    Improper colorings are rejected without a pair scan.  With ``fast_fail``
    the scan stops at the first bad pair, so ``bad_pairs`` holds at most one
    entry.
    """
    require_connected(g)
    if not is_proper(g, f):
        return VerificationReport(False, (), 0)
    bad: list[tuple[int, int]] = []
    checked = 0
    for u in range(g.n):
        dag = bfs_dag(g, u)
        ok = conflict_free_targets(dag, f)
        for v in range(u + 1, g.n):
            checked += 1
            if not ok[v]:
                bad.append((u, v))
                if fast_fail:
                    return VerificationReport(True, tuple(bad), checked)
    return VerificationReport(True, tuple(bad), checked)


def is_strong_cfvc(g: Graph, f: Coloring) -> bool:
    return verify_strong_cfvc(g, f, fast_fail=True).ok


def shortest_paths(g: Graph, u: int, v: int) -> list[tuple[int, ...]]:
    """Every shortest u,v-path, by DFS over the shortest-path DAG."""
    dag = bfs_dag(g, u)
    if dag.dist[v] == UNREACHABLE:
        return []
    target = dag.dist[v]
    out: list[tuple[int, ...]] = []
    path = [u]

    def walk(x: int) -> None:
        if x == v:
            out.append(tuple(path))
            return
        for y in dag.successors[x]:
            # only successors that can still reach v along a shortest path
            if dag.dist[y] <= target:
                path.append(y)
                walk(y)
                path.pop()

    walk(u)
    return [p for p in out if len(p) == target + 1]


def oracle_cf_path(g: Graph, f: Coloring, u: int, v: int, cap: int = 10) -> bool:
    """Brute-force reference for :func:`cf_shortest_path_exists`."""
    if g.n > cap:
        raise OracleCapError(f"oracle limited to {cap} vertices, graph has {g.n}")
    require_connected(g)
    _check_size(g, f)
    for p in shortest_paths(g, u, v):
        counts: dict[int, int] = {}
        for x in p:
            counts[f[x]] = counts.get(f[x], 0) + 1
        if 1 in counts.values():
            return True
    return False


# -- text formats ------------------------------------------------------------

def parse_coloring(text: str, source: str | None = None) -> Coloring:
    """Parse ``s cfvc <n> <k>`` followed by ``v <vertex> <color>`` lines."""
    n = k = None
    colors: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        try:
            if parts[0] == "s":
                if len(parts) != 4 or parts[1] != "cfvc":
                    raise FormatError("malformed header, expected 's cfvc <n> <k>'", lineno, source)
                if n is not None:
                    raise FormatError("duplicate header", lineno, source)
                n, k = int(parts[2]), int(parts[3])
                if n < 0 or k < 1:
                    raise FormatError("header needs n >= 0 and k >= 1", lineno, source)
            elif parts[0] == "v":
                if n is None:
                    raise FormatError("vertex line before header", lineno, source)
                if len(parts) != 3:
                    raise FormatError("malformed line, expected 'v <vertex> <color>'", lineno, source)
                x, c = int(parts[1]), int(parts[2])
                if not 1 <= x <= n:
                    raise FormatError(f"vertex {x} out of range 1..{n}", lineno, source)
                if not 0 <= c < k:
                    raise FormatError(f"color {c} out of range 0..{k - 1}", lineno, source)
                if x - 1 in colors:
                    raise FormatError(f"vertex {x} colored twice", lineno, source)
                colors[x - 1] = c
            else:
                raise FormatError(f"unrecognized line type {parts[0]!r}", lineno, source)
        except ValueError as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError("non-integer field", lineno, source) from None
    if n is None:
        raise FormatError("missing header 's cfvc <n> <k>'", None, source)
    if len(colors) != n:
        missing = sorted(set(range(n)) - colors.keys())
        raise FormatError(f"{len(missing)} vertices uncolored (first: {missing[0] + 1})", None, source)
    return Coloring(k, tuple(colors[v] for v in range(n)))


def write_coloring(f: Coloring) -> str:
    lines = [f"s cfvc {len(f)} {f.k}"]
    lines.extend(f"v {v + 1} {c}" for v, c in enumerate(f.assignment))
    return "\n".join(lines) + "\n"


def write_report(report: VerificationReport) -> str:
    lines = [f"proper {'true' if report.proper else 'false'}"]
    lines.extend(f"bad {u + 1} {v + 1}" for u, v in report.bad_pairs)
    return "\n".join(lines) + "\n"


def parse_report(text: str) -> VerificationReport:
    proper = None
    bad = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts:
            continue
        if parts[0] == "proper" and len(parts) == 2 and parts[1] in ("true", "false"):
            proper = parts[1] == "true"
        elif parts[0] == "bad" and len(parts) == 3:
            bad.append((int(parts[1]) - 1, int(parts[2]) - 1))
        else:
            raise FormatError(f"unrecognized report line {raw!r}", lineno)
    if proper is None:
        raise FormatError("missing 'proper' line")
    return VerificationReport(proper, tuple(bad), len(bad))
