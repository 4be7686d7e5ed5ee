"""Positive NAE-SAT formulas and their gadget graphs for strong cfvc 3-coloring.

Gadget layout (vertex order is fixed so instances are byte-reproducible)::

    h1..h7, a1..a7, b1..b7, clause vertices, variable vertices, connectors

The ``dp`` variant threads the clause vertices into a path through one
connector between each pair of consecutive clauses.
"""

from __future__ import annotations

import itertools
import json
import random
import warnings
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    ColoringError,
    FormatError,
    OracleCapError,
    ReductionError,
    TriviallyUnsatisfiableError,
)
from .graph import Graph, VertexCover
from .verify import Coloring, verify_strong_cfvc

CHAIN = 7  # h1..h7 with a_i, b_i for i = 1..7


@dataclass(frozen=True)
class PositiveCnf:
    num_vars: int
    clauses: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if self.num_vars < 1:
            raise ReductionError("a formula needs at least one variable")
        object.__setattr__(self, "clauses", tuple(frozenset(c) for c in self.clauses))
        for i, c in enumerate(self.clauses):
            if not c:
                raise ReductionError(f"clause {i + 1} is empty")
            for x in c:
                if not 0 <= x < self.num_vars:
                    raise ReductionError(f"clause {i + 1} mentions variable {x + 1} out of range")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def is_nae(self, values: Sequence[bool]) -> bool:
        if len(values) != self.num_vars:
            raise ValueError("assignment length does not match the formula")
        return all(
            any(values[x] for x in c) and not all(values[x] for x in c) for c in self.clauses
        )


@dataclass(frozen=True)
class Assignment:
    values: tuple[bool, ...]

    def complement(self) -> "Assignment":
        return Assignment(tuple(not b for b in self.values))

    def render(self) -> str:
        return " ".join(f"v{i + 1}={'T' if b else 'F'}" for i, b in enumerate(self.values))


@dataclass(frozen=True)
class Role:
    kind: str  # "h", "a", "b", "clause", "var", "conn"
    index: int  # 1-based

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"

    @classmethod
    def parse(cls, text: str) -> "Role":
        for kind in ("clause", "conn", "var", "h", "a", "b"):
            if text.startswith(kind) and text[len(kind):].isdigit():
                return cls(kind, int(text[len(kind):]))
        raise ValueError(f"unknown role {text!r}")


@dataclass(frozen=True)
class ReductionArtifact:
    graph: Graph
    variant: str
    roles: tuple[Role, ...]
    modulator: tuple[int, ...]
    cnf: PositiveCnf

    def vertex(self, kind: str, index: int) -> int:
        return self.roles.index(Role(kind, index))

    def vertices_of(self, kind: str) -> list[int]:
        return [v for v, r in enumerate(self.roles) if r.kind == kind]

    @property
    def modulator_cover(self) -> VertexCover:
        return VertexCover(self.modulator)


# -- DIMACS CNF --------------------------------------------------------------

def parse_cnf(text: str, source: str | None = None) -> PositiveCnf:
    """Parse DIMACS CNF with positive literals only."""
    header = None
    clauses: list[frozenset[int]] = []
    current: list[int] = []
    current_line = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise FormatError("duplicate header", lineno, source)
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError("malformed header, expected 'p cnf <n> <m>'", lineno, source)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise FormatError("malformed header, expected 'p cnf <n> <m>'", lineno, source) from None
            continue
        if header is None:
            raise FormatError("clause before header", lineno, source)
        n = header[0]
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise FormatError(f"non-integer literal {tok!r}", lineno, source) from None
            if lit == 0:
                if not current:
                    raise FormatError("empty clause", lineno, source)
                clauses.append(frozenset(current))
                current = []
                continue
            if lit < 0:
                raise FormatError(f"negative literal {lit}: positive formulas only", lineno, source)
            if lit > n:
                raise FormatError(f"variable {lit} out of range 1..{n}", lineno, source)
            if lit - 1 in current:
                raise FormatError(f"variable {lit} repeated within a clause", lineno, source)
            current.append(lit - 1)
            current_line = lineno
    if header is None:
        raise FormatError("missing header 'p cnf <n> <m>'", None, source)
    if current:
        raise FormatError("last clause not terminated by 0", current_line, source)
    if len(clauses) != header[1]:
        raise FormatError(f"header declares {header[1]} clauses, found {len(clauses)}", None, source)
    if header[0] < 1:
        raise FormatError("formula needs at least one variable", None, source)
    return PositiveCnf(header[0], tuple(clauses))


def write_cnf(cnf: PositiveCnf) -> str:
    lines = [f"p cnf {cnf.num_vars} {cnf.num_clauses}"]
    lines.extend(" ".join(str(x + 1) for x in sorted(c)) + " 0" for c in cnf.clauses)
    return "\n".join(lines) + "\n"


# -- NAE oracle and instance generation --------------------------------------

def nae_oracle(cnf: PositiveCnf, cap: int = 24) -> Assignment | None:
    """Lexicographically least NAE assignment (False < True, variable 1 first),
    by exhaustive search."""
    if cnf.num_vars > cap:
        raise OracleCapError(f"oracle limited to {cap} variables, formula has {cnf.num_vars}")
    if any(len(c) <= 1 for c in cnf.clauses):
        return None
    masks = [sum(1 << (cnf.num_vars - 1 - x) for x in c) for c in cnf.clauses]
    for bits in range(1 << cnf.num_vars):
        if all(0 < bits & mk < mk for mk in masks):
            return Assignment(tuple(bool(bits >> (cnf.num_vars - 1 - i) & 1)
                                    for i in range(cnf.num_vars)))
    return None


def random_positive_cnf(num_vars: int, num_clauses: int, min_clause_size: int = 2,
                        seed: int | None = None) -> PositiveCnf:
    if min_clause_size < 2:
        raise ValueError("min_clause_size must be at least 2")
    if num_vars < min_clause_size:
        raise ValueError("num_vars must be at least min_clause_size")
    if num_clauses < 0:
        raise ValueError("num_clauses must be nonnegative")
    rng = random.Random(seed)
    clauses = []
    for _ in range(num_clauses):
        size = rng.randint(min_clause_size, num_vars)
        clauses.append(frozenset(rng.sample(range(num_vars), size)))
    return PositiveCnf(num_vars, tuple(clauses))


def all_positive_cnfs(max_vars: int, max_clauses: int, min_clause_size: int = 2):
    """Every formula with 1..max_clauses clauses (repeats allowed, order
    ignored) over exactly n variables, for n up to ``max_vars``."""
    for n in range(1, max_vars + 1):
        pool = [frozenset(c) for size in range(min_clause_size, n + 1)
                for c in itertools.combinations(range(n), size)]
        for m in range(1, max_clauses + 1):
            for combo in itertools.combinations_with_replacement(pool, m):
                yield PositiveCnf(n, combo)


# -- gadget builders ---------------------------------------------------------

def _check_buildable(cnf: PositiveCnf) -> None:
    if cnf.num_clauses == 0:
        raise ReductionError("formula has no clauses")
    for i, c in enumerate(cnf.clauses):
        if len(c) <= 1:
            raise TriviallyUnsatisfiableError(
                f"clause {i + 1} has size {len(c)}: trivially unsatisfiable, reduction refused"
            )
    used = set().union(*cnf.clauses)
    idle = [x + 1 for x in range(cnf.num_vars) if x not in used]
    if idle:
        warnings.warn(
            f"variables {idle} occur in no clause; they become pendant vertices on h1",
            stacklevel=3,
        )


def _gadget(cnf: PositiveCnf, connectors: bool) -> tuple[Graph, list[Role]]:
    _check_buildable(cnf)
    n, m = cnf.num_vars, cnf.num_clauses
    roles = ([Role("h", i) for i in range(1, CHAIN + 1)]
             + [Role("a", i) for i in range(1, CHAIN + 1)]
             + [Role("b", i) for i in range(1, CHAIN + 1)]
             + [Role("clause", j) for j in range(1, m + 1)]
             + [Role("var", x) for x in range(1, n + 1)])
    if connectors:
        roles += [Role("conn", j) for j in range(1, m)]

    def h(i): return i - 1
    def a(i): return CHAIN + i - 1
    def b(i): return 2 * CHAIN + i - 1
    def clause(j): return 3 * CHAIN + j
    def var(x): return 3 * CHAIN + m + x
    def conn(j): return 3 * CHAIN + m + n + j

    edges = []
    for i in range(1, CHAIN):
        edges += [(h(i), a(i)), (a(i), h(i + 1)), (h(i + 1), b(i)), (b(i), h(i))]
    edges += [(h(CHAIN), a(CHAIN)), (h(CHAIN), b(CHAIN))]
    for j, c in enumerate(cnf.clauses):
        edges += [(clause(j), var(x)) for x in sorted(c)]
        edges += [(a(CHAIN), clause(j)), (b(CHAIN), clause(j))]
    edges += [(h(1), var(x)) for x in range(n)]
    if connectors:
        for j in range(m - 1):
            edges += [(clause(j), conn(j)), (conn(j), clause(j + 1))]
    return Graph.from_edges(len(roles), edges), roles


def build_reduction_vc(cnf: PositiveCnf) -> ReductionArtifact:
    g, roles = _gadget(cnf, connectors=False)
    keep = {"var", "h"}
    mod = [v for v, r in enumerate(roles)
           if r.kind in keep or (r.kind in ("a", "b") and r.index == CHAIN)]
    return ReductionArtifact(g, "vc", tuple(roles), tuple(mod), cnf)


def build_reduction_dp(cnf: PositiveCnf) -> ReductionArtifact:
    g, roles = _gadget(cnf, connectors=True)
    mod = [v for v, r in enumerate(roles) if r.kind in ("var", "h", "a", "b")]
    return ReductionArtifact(g, "dp", tuple(roles), tuple(mod), cnf)


def build_reduction(cnf: PositiveCnf, variant: str) -> ReductionArtifact:
    if variant == "vc":
        return build_reduction_vc(cnf)
    if variant == "dp":
        return build_reduction_dp(cnf)
    raise ValueError(f"unknown variant {variant!r}")


def clause_path_order(art: ReductionArtifact) -> list[int]:
    """The expected ``graph - modulator`` path, c1, c12, c2, ..., cm."""
    m = art.cnf.num_clauses
    out = [art.vertex("clause", 1)]
    for j in range(1, m):
        out += [art.vertex("conn", j), art.vertex("clause", j + 1)]
    return out


# -- solution mappings -------------------------------------------------------

_FIXED_COLOR = {"h": 2, "a": 0, "b": 1, "clause": 2, "conn": 0}


def assignment_to_coloring(art: ReductionArtifact, a: Assignment) -> Coloring:
    if len(a.values) != art.cnf.num_vars:
        raise ColoringError("assignment length does not match the formula")
    if not art.cnf.is_nae(a.values):
        raise ColoringError("assignment is not NAE-satisfying")
    colors = []
    for r in art.roles:
        if r.kind == "var":
            colors.append(1 if a.values[r.index - 1] else 0)
        else:
            colors.append(_FIXED_COLOR[r.kind])
    return Coloring(3, tuple(colors))


def coloring_to_assignment(art: ReductionArtifact, f: Coloring) -> Assignment:
    """Read a NAE assignment off a strong cfvc 3-coloring of the gadget.

    The color of h1 is renamed to 2 and the other two colors, in ascending
    order, to 0 and 1; variables colored 1 become true.
    """
    if f.k != 3 or f.colors_used() != 3:
        raise ColoringError("expected a coloring using exactly 3 colors")
    if not verify_strong_cfvc(art.graph, f, fast_fail=True).ok:
        raise ColoringError("coloring is not a strong cfvc coloring of the gadget graph")
    pinned = f[art.vertex("h", 1)]
    low, high = sorted({0, 1, 2} - {pinned})
    rename = {pinned: 2, low: 0, high: 1}
    values = []
    for x in range(1, art.cnf.num_vars + 1):
        c = rename[f[art.vertex("var", x)]]
        if c == 2:
            raise ColoringError(f"variable vertex {x} shares the color of h1")
        values.append(c == 1)
    return Assignment(tuple(values))


# -- sidecar -----------------------------------------------------------------

def artifact_to_json(art: ReductionArtifact) -> str:
    doc = {
        "variant": art.variant,
        "roles": {str(v + 1): str(r) for v, r in enumerate(art.roles)},
        "modulator": [v + 1 for v in art.modulator],
        "num_vars": art.cnf.num_vars,
        "num_clauses": art.cnf.num_clauses,
        "clauses": [sorted(x + 1 for x in c) for c in art.cnf.clauses],
    }
    return json.dumps(doc, indent=2) + "\n"


def artifact_from_json(text: str, graph: Graph | None = None) -> ReductionArtifact:
    """Rebuild an artifact from its sidecar.

    The gadget is reconstructed from the stored clauses; if ``graph`` is
    given it must match the reconstruction.
    """
    try:
        doc = json.loads(text)
        cnf = PositiveCnf(doc["num_vars"], tuple(frozenset(x - 1 for x in c) for c in doc["clauses"]))
        variant = doc["variant"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed reduction sidecar: {exc}") from None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        art = build_reduction(cnf, variant)
    if cnf.num_clauses != doc.get("num_clauses", cnf.num_clauses):
        raise FormatError("num_clauses disagrees with the clause list")
    roles = {int(k) - 1: Role.parse(r) for k, r in doc.get("roles", {}).items()}
    if roles and roles != dict(enumerate(art.roles)):
        raise FormatError("sidecar roles disagree with the rebuilt gadget")
    if graph is not None and graph != art.graph:
        raise FormatError("graph file does not match the reduction sidecar")
    return art
