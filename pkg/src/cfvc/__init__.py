"""Strong conflict-free vertex-connection colorings: verification, exact and
vertex-cover FPT solving, and positive NAE-SAT gadget reductions."""

from .graph import (
    Graph,
    ShortestPathDag,
    TwinClassPartition,
    VertexCover,
    bfs_dag,
    diameter,
    false_twin_classes,
    greedy_vertex_cover,
    is_complete_bipartite,
    is_connected,
    parse_graph,
    write_graph,
)
from .reductions import (
    Assignment,
    PositiveCnf,
    ReductionArtifact,
    assignment_to_coloring,
    build_reduction_dp,
    build_reduction_vc,
    coloring_to_assignment,
    nae_oracle,
    parse_cnf,
    random_positive_cnf,
)
from .solvers import (
    Decision,
    KernelTrace,
    SolveConfig,
    SolveOutcome,
    kernelize,
    lift_coloring,
    path_svcfc_closed_form,
    solve_fpt,
    solve_k,
    svcfc_number,
    trivial_cover_coloring,
)
from .verify import (
    Coloring,
    VerificationReport,
    cf_shortest_path_exists,
    is_proper,
    oracle_cf_path,
    verify_strong_cfvc,
)

__version__ = "0.1.0"
