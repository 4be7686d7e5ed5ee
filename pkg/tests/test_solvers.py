import pytest

from cfvc import fixtures
from cfvc.errors import DisconnectedGraphError, FormatError, InvalidCoverError
from cfvc.graph import Graph, VertexCover, greedy_vertex_cover, is_connected
from cfvc.solvers import (
    Decision,
    SolveConfig,
    SolveOutcome,
    kernel_size_bound,
    kernelize,
    lift_coloring,
    parse_outcome,
    parse_trace,
    path_svcfc_closed_form,
    search_order,
    solve_fpt,
    solve_k,
    svcfc_number,
    trivial_cover_coloring,
    write_outcome,
    write_trace,
)
from cfvc.verify import Coloring, is_strong_cfvc, verify_strong_cfvc

from conftest import (
    chromatic_number,
    connected_graphs,
    planted_twin_graph,
    random_connected_graph,
)

K2 = Graph.from_edges(2, [(0, 1)])
EXHAUSTIVE = SolveConfig(interval_pruning=False)


def assert_certified(g, out):
    if out.yes:
        assert out.certificate.k == out.k
        assert verify_strong_cfvc(g, out.certificate).ok


# -- solve_k ------------------------------------------------------------------

def test_solve_k_complete_bipartite():
    g = fixtures.complete_bipartite(2, 3)
    out = solve_k(g, 2)
    assert out.yes
    assert_certified(g, out)
    colors = out.certificate.assignment
    assert len({colors[0], colors[1]}) == 1 and len(set(colors[2:])) == 1


def test_solve_k_p7():
    assert solve_k(fixtures.path(7), 2).decision is Decision.NO
    out = solve_k(fixtures.path(7), 3)
    assert out.yes
    assert_certified(fixtures.path(7), out)


def test_solve_k_fig1_non_monotone():
    assert solve_k(fixtures.fig1(), 3).yes
    assert solve_k(fixtures.fig1(minus_u=True), 3).decision is Decision.NO


def test_solve_k_errors():
    with pytest.raises(DisconnectedGraphError):
        solve_k(Graph(2, ((), ())), 2)
    with pytest.raises(ValueError):
        solve_k(K2, 0)


def test_search_order_starts_at_zero_and_is_a_permutation(rng):
    for _ in range(20):
        g = random_connected_graph(rng, rng.randint(1, 12))
        order = search_order(g)
        assert order[0] == 0 and sorted(order) == list(range(g.n))


def test_budget_exhaustion_is_explicit():
    out = solve_k(fixtures.fig1(minus_u=True), 3, SolveConfig(node_budget=5))
    assert out.decision is Decision.BUDGET and out.certificate is None
    with pytest.raises(ValueError):
        SolveConfig(node_budget=0)


def test_outcome_requires_certificate_iff_yes():
    with pytest.raises(ValueError):
        SolveOutcome(Decision.YES)
    with pytest.raises(ValueError):
        SolveOutcome(Decision.NO, Coloring(1, (0,)))


def test_symmetry_breaking_agrees_exhaustive():
    on = SolveConfig(symmetry_breaking=True)
    off = SolveConfig(symmetry_breaking=False)
    for g in connected_graphs(7):
        for k in (1, 2, 3):
            a, b = solve_k(g, k, on), solve_k(g, k, off)
            assert a.decision == b.decision
            assert_certified(g, a)
            assert_certified(g, b)


def test_interval_pruning_agrees_with_plain_enumeration(rng):
    for g in connected_graphs(6):
        for k in (2, 3):
            assert solve_k(g, k).decision == solve_k(g, k, EXHAUSTIVE).decision
    for _ in range(80):
        g = random_connected_graph(rng, rng.randint(5, 10), p=0.15)
        assert solve_k(g, 3).decision == solve_k(g, 3, EXHAUSTIVE).decision


def test_sequential_runs_are_reproducible():
    g = fixtures.fig1()
    assert solve_k(g, 3) == solve_k(g, 3)


def test_parallel_agrees_with_sequential():
    cfg = SolveConfig(parallel=True, workers=2)
    for g, k in [(fixtures.fig1(), 3), (fixtures.fig1(minus_u=True), 3), (fixtures.path(9), 3)]:
        seq, par = solve_k(g, k), solve_k(g, k, cfg)
        assert seq.decision == par.decision
        assert_certified(g, par)


def test_svcfc_lower_bounded_by_chromatic_number(rng):
    for _ in range(60):
        g = random_connected_graph(rng, rng.randint(1, 8), p=0.4)
        out = svcfc_number(g)
        assert out.k >= chromatic_number(g)
        assert_certified(g, out)


# -- svcfc_number and closed form -------------------------------------------------

def test_svcfc_examples():
    assert svcfc_number(Graph(1, ((),))).k == 1
    assert svcfc_number(fixtures.complete_bipartite(3, 3)).k == 2
    assert svcfc_number(fixtures.path(7)).k == 3


def test_svcfc_complete_graph_needs_n_colors():
    for n in range(3, 6):
        out = svcfc_number(fixtures.complete(n))
        assert out.k == n
        assert_certified(fixtures.complete(n), out)


def test_svcfc_propagates_budget():
    out = svcfc_number(fixtures.fig1(minus_u=True), SolveConfig(node_budget=3))
    assert out.decision is Decision.BUDGET


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 2), (3, 2), (4, 3), (7, 3), (8, 4), (15, 4), (16, 5)])
def test_path_closed_form(n, expected):
    assert path_svcfc_closed_form(n) == expected


# -- trivial coloring ---------------------------------------------------------------

def test_trivial_cover_coloring_examples():
    f = trivial_cover_coloring(K2, VertexCover((0, 1)))
    assert f == Coloring(3, (0, 1))
    f = trivial_cover_coloring(fixtures.star(4), VertexCover((0,)))
    assert f == Coloring(2, (0, 1, 1, 1, 1))
    g = fixtures.fig1()
    assert is_strong_cfvc(g, trivial_cover_coloring(g, greedy_vertex_cover(g)))


def test_trivial_cover_coloring_always_valid(rng):
    for _ in range(50):
        g = random_connected_graph(rng, rng.randint(2, 12), p=0.2)
        x = greedy_vertex_cover(g)
        f = trivial_cover_coloring(g, x)
        assert f.k == len(x) + 1
        assert is_strong_cfvc(g, f)


def test_trivial_cover_coloring_rejects_non_cover():
    with pytest.raises(InvalidCoverError):
        trivial_cover_coloring(fixtures.path(3), VertexCover((0,)))


# -- kernelization --------------------------------------------------------------

def test_kernelize_star():
    g = fixtures.star(5)
    kernel, trace = kernelize(g, 2, VertexCover((0,)))
    assert kernel == fixtures.star(3)
    assert trace.removals == ((5, 1), (4, 1))
    assert write_trace(trace) == "rm 6 2\nrm 5 2\n"


def test_kernelize_fig1_unchanged():
    g = fixtures.fig1()
    kernel, trace = kernelize(g, 3, greedy_vertex_cover(g))
    assert kernel == g and trace.removals == ()


def test_kernelize_k27():
    g = fixtures.complete_bipartite(2, 7)
    kernel, trace = kernelize(g, 2, VertexCover((0, 1)))
    assert kernel == fixtures.complete_bipartite(2, 3)
    assert len(trace.removals) == 4


def test_kernelize_errors():
    with pytest.raises(InvalidCoverError):
        kernelize(fixtures.path(4), 2, VertexCover((0,)))
    with pytest.raises(DisconnectedGraphError):
        kernelize(Graph(2, ((), ())), 2, VertexCover(()))


def test_lift_identity_and_star():
    g = fixtures.fig1()
    _, trace = kernelize(g, 3, greedy_vertex_cover(g))
    assert lift_coloring(trace, fixtures.FIG1_COLORING) == fixtures.FIG1_COLORING
    _, trace = kernelize(fixtures.star(5), 2, VertexCover((0,)))
    assert lift_coloring(trace, Coloring(2, (0, 1, 1, 1))) == Coloring(2, (0, 1, 1, 1, 1, 1))


def test_lift_rejects_mismatch():
    _, trace = kernelize(fixtures.star(5), 2, VertexCover((0,)))
    with pytest.raises(ValueError):
        lift_coloring(trace, Coloring(2, (0, 1)))


def test_kernel_trace_invariants_and_lift(rng):
    trimmed = 0
    for _ in range(60):
        k = rng.choice((2, 3))
        n = rng.randint(k + 4, 10)
        g = planted_twin_graph(rng, n, rng.randint(k + 2, n - 2))
        x = greedy_vertex_cover(g)
        kernel, trace = kernelize(g, k, x)
        assert is_connected(kernel)
        assert kernel.n <= kernel_size_bound(len(x), k)
        assert kernel.n == g.n - len(trace.removals)
        for removed, rep in trace.removals:
            assert g.neighbors(removed) == g.neighbors(rep)
            assert removed not in x and rep in trace.index_map
        trimmed += bool(trace.removals)
        out = solve_k(kernel, k)
        if out.yes:
            assert is_strong_cfvc(g, lift_coloring(trace, out.certificate))
    assert trimmed > 20


def test_trace_round_trip():
    g = fixtures.complete_bipartite(2, 7)
    _, trace = kernelize(g, 2, VertexCover((0, 1)))
    assert parse_trace(write_trace(trace), g.n) == trace
    with pytest.raises(FormatError):
        parse_trace("rm 1\n", 3)


# -- FPT pipeline ---------------------------------------------------------------

def test_fpt_trivial_branch():
    g = fixtures.path(6)
    x = VertexCover((1, 3, 4))
    out = solve_fpt(g, 4, x)
    assert out.yes and out.nodes_explored == 0
    assert_certified(g, out)


def test_fpt_fig1():
    out = solve_fpt(fixtures.fig1(), 3)
    assert out.yes
    assert_certified(fixtures.fig1(), out)


def test_fpt_k27_via_kernel():
    g = fixtures.complete_bipartite(2, 7)
    out = solve_fpt(g, 2, VertexCover((0, 1)))
    assert out.yes
    assert_certified(g, out)


def test_fpt_agrees_with_exact(rng):
    for _ in range(500):
        g = random_connected_graph(rng, rng.randint(1, 8), p=rng.choice((0.15, 0.3, 0.5)))
        for k in (2, 3):
            a, b = solve_fpt(g, k), solve_k(g, k)
            assert a.decision == b.decision
            assert_certified(g, a)


def test_outcome_round_trip():
    out = solve_k(fixtures.fig1(), 3)
    text = write_outcome(out)
    assert text.startswith("result yes\ns cfvc 10 3\n")
    assert text.endswith(f"nodes {out.nodes_explored}\n")
    assert parse_outcome(text) == out
    no = solve_k(fixtures.fig1(minus_u=True), 3)
    assert write_outcome(no) == f"result no\nnodes {no.nodes_explored}\n"
