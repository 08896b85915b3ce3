"""Divergence-guided swap counting: the spectral lower bound.

Starting from a qubit assignment, interactions already sitting on
couplers are erased; the loop then repeatedly evaluates, for every edge
of the chosen subgraph, the divergence after exchanging the two occupants
across it. The best strictly improving exchange is applied (one swap),
newly executable interactions are erased, and the process repeats until
the interaction state is maximally mixed. The swap count across the whole
descent is the reported lower bound.

When no exchange improves the divergence and nothing is executable, the
least-bad exchange is applied anyway against a finite stall budget; runs
that exhaust it are flagged rather than aborted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .assignment import Assignment, assign_qubits, max_swap_bound
from .circuits import InteractionGraph
from .errors import SweepError, ValidationError
from .graphs import Edge, Graph, normalize_edge, relabel
from .spectral import (
    check_beta,
    entropy_of_probs,
    gibbs_weights,
    graph_gibbs,
    laplacian_spectrum,
    qjsd,
)

EPS_ISO = 1e-10  # divergence threshold for "states are equal"
EPS_IMP = 1e-12  # strict-improvement margin per applied swap


def standard_beta_grid() -> tuple[float, ...]:
    """The 99-point sweep grid A*10^a, A in 1..9, a in -5..5, ascending."""
    return tuple(sorted(a * 10.0**e for a in range(1, 10) for e in range(-5, 6)))


def validate_beta_grid(grid: Sequence[float]) -> tuple[float, ...]:
    values = tuple(check_beta(b) for b in grid)
    if not values:
        raise ValidationError("beta grid is empty")
    if any(b <= 0.0 for b in values):
        raise ValidationError("beta grid values must be > 0")
    if any(b2 <= b1 for b1, b2 in zip(values, values[1:])):
        raise ValidationError("beta grid must be strictly increasing")
    return values


@dataclass(frozen=True)
class SwapStep:
    edge: Edge  # subgraph edge whose occupants were exchanged
    qjsd_before: float
    qjsd_after: float
    forced: bool = False


@dataclass(frozen=True)
class EraseStep:
    edges: tuple[Edge, ...]  # interaction edges erased this round


@dataclass(frozen=True)
class StallStep:
    reason: str


TraceStep = Union[SwapStep, EraseStep, StallStep]


@dataclass(frozen=True)
class AlgoTrace:
    steps: tuple[TraceStep, ...]
    beta: float
    swap_count: int
    stalled: bool
    iterations: int = 0


@dataclass(frozen=True)
class SweepResult:
    beta_star: float
    m_star: int
    per_beta: tuple[tuple[float, int, bool], ...]  # (beta, m, stalled)


@dataclass(frozen=True)
class BoundReport:
    u_swap: int
    beta_star: float
    m_swap_max: int
    ged: int
    assignment: Assignment
    trace: AlgoTrace
    stalled: bool
    method: str
    per_beta: tuple[tuple[float, int, bool], ...] | None = None


def _executable(
    edges, pos: Sequence[int], sub_edges: frozenset[Edge]
) -> frozenset[Edge]:
    return frozenset(
        e for e in edges if normalize_edge(pos[e[0]], pos[e[1]]) in sub_edges
    )


def remove_trivial_edges(ig: Graph, a: Assignment) -> Graph:
    """Drop interaction edges already sitting on subgraph couplers."""
    pos = a.positions()
    return Graph(ig.n, ig.edges - _executable(ig.edges, pos, a.cg_subgraph.edges))


def cg_in_ig_frame(a: Assignment) -> Graph:
    """The chosen subgraph relabeled so indices refer to IG vertices."""
    pos = a.positions()
    inverse = [0] * len(pos)
    for v, p in enumerate(pos):
        inverse[p] = v
    return relabel(a.cg_subgraph, inverse)


def aligned_qjsd(ig_remaining: Graph, a: Assignment, beta: float) -> float:
    """Divergence between the interaction state and the aligned device state."""
    if ig_remaining.n != a.cg_subgraph.n:
        raise ValidationError("interaction graph and subgraph sizes differ")
    rho = graph_gibbs(ig_remaining, beta)
    sigma = graph_gibbs(cg_in_ig_frame(a), beta)
    return qjsd(rho, sigma)


def _row_entropies(eigenvalue_rows: np.ndarray) -> np.ndarray:
    p = np.maximum(eigenvalue_rows, 0.0)
    terms = np.where(p > 0.0, p * np.log(np.where(p > 0.0, p, 1.0)), 0.0)
    return np.maximum(-terms.sum(axis=1), 0.0)


class _Engine:
    """Shared state for one run: subgraph spectrum, device state, caches."""

    def __init__(self, graph: Graph, sub: Graph, beta: float):
        self.k = graph.n
        self.beta = beta
        self.sub = sub
        self.candidates = sub.edge_list
        w, v = laplacian_spectrum(sub)
        p_cg = gibbs_weights(np.asarray(w), beta)
        self.sigma0 = (np.asarray(v) * p_cg) @ np.asarray(v).T
        self.s_sigma = entropy_of_probs(p_cg)

    def rho_parts(self, remaining: frozenset[Edge]) -> tuple[np.ndarray, float]:
        w, v = laplacian_spectrum(Graph(self.k, remaining))
        p = gibbs_weights(np.asarray(w), self.beta)
        rho = (np.asarray(v) * p) @ np.asarray(v).T
        return rho, entropy_of_probs(p)

    def qjsd_single(self, remaining: frozenset[Edge], pos: Sequence[int]) -> float:
        rho, s_rho = self.rho_parts(remaining)
        mix = (rho + self.sigma0[np.ix_(pos, pos)]) / 2.0
        s_mix = entropy_of_probs(np.linalg.eigvalsh(mix))
        return max(s_mix - (s_rho + self.s_sigma) / 2.0, 0.0)

    def qjsd_with_candidates(
        self, remaining: frozenset[Edge], pos: Sequence[int]
    ) -> tuple[float, np.ndarray, list[list[int]]]:
        """Current divergence plus the divergence after each candidate swap."""
        rho, s_rho = self.rho_parts(remaining)
        pos = list(pos)
        stacked = np.empty((1 + len(self.candidates), self.k, self.k))
        stacked[0] = (rho + self.sigma0[np.ix_(pos, pos)]) / 2.0
        swapped: list[list[int]] = []
        for ci, (x, y) in enumerate(self.candidates):
            u = pos.index(x)
            v = pos.index(y)
            npos = list(pos)
            npos[u], npos[v] = y, x
            swapped.append(npos)
            stacked[ci + 1] = (rho + self.sigma0[np.ix_(npos, npos)]) / 2.0
        entropies = _row_entropies(np.linalg.eigvalsh(stacked))
        base = (s_rho + self.s_sigma) / 2.0
        values = np.maximum(entropies - base, 0.0)
        return float(values[0]), values[1:], swapped


def swap_uncomplexity(
    ig: InteractionGraph,
    a: Assignment,
    beta: float,
    *,
    eps_iso: float = EPS_ISO,
    eps_imp: float = EPS_IMP,
    stall_budget: int | None = None,
) -> tuple[int, AlgoTrace]:
    """Swap count of the divergence descent at one inverse temperature.

    Returns ``(m, trace)``. The early zero exit requires both the
    divergence test and exact edge-set equality under the assignment, so
    that the vanishing divergence of the ultra-high-temperature limit
    cannot certify a vacuous bound on its own.
    """
    beta = check_beta(beta)
    graph = ig.graph
    if graph.n != a.cg_subgraph.n:
        raise ValidationError("assignment does not cover the interaction graph")
    engine = _Engine(graph, a.cg_subgraph, beta)
    pos = list(a.positions())
    sub_edges = a.cg_subgraph.edges

    mapped = {normalize_edge(pos[u], pos[v]) for u, v in graph.edges}
    if mapped == set(sub_edges):
        if engine.qjsd_single(frozenset(graph.edges), pos) <= eps_iso:
            return 0, AlgoTrace((), beta, 0, False, 0)

    remaining = frozenset(graph.edges) - _executable(graph.edges, pos, sub_edges)
    steps: list[TraceStep] = []
    m = 0
    budget = stall_budget if stall_budget is not None else max_swap_bound(ig, a)
    max_iterations = budget + len(remaining) * max(len(engine.candidates), 1)
    stalled = False
    iterations = 0

    def erase_now() -> bool:
        nonlocal remaining
        newly = _executable(remaining, pos, sub_edges)
        if newly:
            remaining = remaining - newly
            steps.append(EraseStep(tuple(sorted(newly))))
            return True
        return False

    while remaining:
        iterations += 1
        if iterations > max_iterations:
            steps.append(StallStep("iteration cap reached"))
            stalled = True
            break
        qjsd1, cand_vals, swapped = engine.qjsd_with_candidates(remaining, pos)
        best_i = int(np.argmin(cand_vals))  # first minimum = smallest edge
        best_val = float(cand_vals[best_i])
        if best_val < qjsd1 - eps_imp:
            pos = swapped[best_i]
            m += 1
            steps.append(SwapStep(engine.candidates[best_i], qjsd1, best_val))
            erase_now()
            continue
        if not remaining:
            break
        if erase_now():
            continue
        if budget <= 0:
            steps.append(StallStep("stall budget exhausted"))
            stalled = True
            break
        budget -= 1
        steps.append(StallStep("no improving swap; applying least-bad candidate"))
        pos = swapped[best_i]
        m += 1
        steps.append(SwapStep(engine.candidates[best_i], qjsd1, best_val, forced=True))
        erase_now()

    return m, AlgoTrace(tuple(steps), beta, m, stalled, iterations)


def beta_sweep(
    ig: InteractionGraph,
    a: Assignment,
    grid: Sequence[float] | None = None,
    *,
    eps_iso: float = EPS_ISO,
    eps_imp: float = EPS_IMP,
    stall_budget: int | None = None,
) -> SweepResult:
    """Minimum swap count over the grid; ties resolve to the smallest beta.

    Stalled runs are excluded from the minimum. If every run stalls,
    raises :class:`SweepError` carrying the per-beta results.
    """
    values = standard_beta_grid() if grid is None else validate_beta_grid(grid)
    per_beta: list[tuple[float, int, bool]] = []
    best: tuple[int, float] | None = None
    for b in values:
        m, trace = swap_uncomplexity(
            ig, a, b, eps_iso=eps_iso, eps_imp=eps_imp, stall_budget=stall_budget
        )
        per_beta.append((b, m, trace.stalled))
        if not trace.stalled and (best is None or m < best[0]):
            best = (m, b)
    if best is None:
        raise SweepError("every sweep run stalled", partial=per_beta)
    return SweepResult(best[1], best[0], tuple(per_beta))


def compute_bound(
    ig: InteractionGraph,
    cg: Graph,
    *,
    beta: float | None = None,
    grid: Sequence[float] | None = None,
    class_budget: int | None = None,
    eps_iso: float = EPS_ISO,
    eps_imp: float = EPS_IMP,
    stall_budget: int | None = None,
) -> BoundReport:
    """Assignment, divergence bound (swept or at a fixed beta), max bound."""
    kwargs = {} if class_budget is None else {"class_budget": class_budget}
    placed = assign_qubits(ig, cg, **kwargs)
    a = placed.assignment
    m_max = max_swap_bound(ig, a)
    if beta is not None:
        m, trace = swap_uncomplexity(
            ig, a, beta, eps_iso=eps_iso, eps_imp=eps_imp, stall_budget=stall_budget
        )
        return BoundReport(
            m, beta, m_max, placed.ged, a, trace, trace.stalled, placed.method
        )
    sweep = beta_sweep(
        ig, a, grid, eps_iso=eps_iso, eps_imp=eps_imp, stall_budget=stall_budget
    )
    _, trace = swap_uncomplexity(
        ig, a, sweep.beta_star, eps_iso=eps_iso, eps_imp=eps_imp, stall_budget=stall_budget
    )
    return BoundReport(
        sweep.m_star,
        sweep.beta_star,
        m_max,
        placed.ged,
        a,
        trace,
        False,
        placed.method,
        sweep.per_beta,
    )
