"""Timing and size tables for the exact solver on path and gadget families."""

from __future__ import annotations

import csv
import time
import warnings
from dataclasses import dataclass
from typing import IO, Iterator

from . import fixtures
from .reductions import build_reduction, random_positive_cnf
from .solvers import SolveConfig, kernelize, path_svcfc_closed_form, solve_fpt, solve_k
from .graph import greedy_vertex_cover

CSV_HEADER = ("instance", "n", "k", "decision", "nodes", "millis")
SUITES = ("paths", "reductions", "kernels")


@dataclass
class BenchRow:
    instance: str
    n: int
    k: int
    decision: str
    nodes: int
    millis: float

    def as_tuple(self) -> tuple:
        return (self.instance, self.n, self.k, self.decision, self.nodes, f"{self.millis:.3f}")


def _timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, (time.perf_counter() - t0) * 1000.0


def bench_paths(max_n: int, cfg: SolveConfig) -> Iterator[BenchRow]:
    """Both sides of the threshold: k = svcfc(P_n) - 1 (no) and svcfc(P_n) (yes)."""
    for n in range(1, max_n + 1):
        g = fixtures.path(n)
        top = path_svcfc_closed_form(n)
        for k in (top - 1, top):
            if k < 1:
                continue
            out, ms = _timed(solve_k, g, k, cfg)
            yield BenchRow(f"P{n}", n, k, out.decision.value, out.nodes_explored, ms)


def bench_reductions(max_vars: int, cfg: SolveConfig, seed: int = 0) -> Iterator[BenchRow]:
    for nv in range(2, max_vars + 1):
        cnf = random_positive_cnf(nv, nv, 2, seed=seed + nv)
        for variant in ("vc", "dp"):
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                art = build_reduction(cnf, variant)
            out, ms = _timed(solve_k, art.graph, 3, cfg)
            yield BenchRow(f"{variant}-vars{nv}-clauses{nv}", art.graph.n, 3,
                           out.decision.value, out.nodes_explored, ms)


def bench_kernels(max_n: int, cfg: SolveConfig) -> Iterator[BenchRow]:
    """K_{2,q}: the twin class of size q shrinks to k + 1 = 3."""
    for q in range(1, max_n + 1):
        g = fixtures.complete_bipartite(2, q)
        cover = greedy_vertex_cover(g)
        kernel, _ = kernelize(g, 2, cover)
        out, ms = _timed(solve_fpt, g, 2, cover, cfg)
        yield BenchRow(f"K2,{q}:kernel{kernel.n}", g.n, 2, out.decision.value,
                       out.nodes_explored, ms)


def run_suite(suite: str, max_n: int, cfg: SolveConfig | None = None) -> list[BenchRow]:
    cfg = cfg or SolveConfig()
    if suite == "paths":
        return list(bench_paths(max_n, cfg))
    if suite == "reductions":
        return list(bench_reductions(max_n, cfg))
    if suite == "kernels":
        return list(bench_kernels(max_n, cfg))
    raise ValueError(f"unknown suite {suite!r}")


def write_csv(rows: list[BenchRow], fh: IO[str]) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r.as_tuple())
