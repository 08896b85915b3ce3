"""Restricted operations on graph states.

Edge erasure realizes the projective measurement that removes one
subsystem interaction: the graph loses the edge and the Gibbs state is
re-derived downstream, which reaches the same end state without
renormalization drift. Occupant exchanges are confined to edges of the
chosen subgraph. The Birkhoff decomposition of doubly stochastic matrices
is kept as a standalone utility covering the channel formalism's convex
permutation mixtures.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .assignment import Assignment
from .errors import DecompositionError, ValidationError
from .graphs import Edge, Graph, normalize_edge

ROW_SUM_TOL = 1e-9
ENTRY_TOL = 1e-12
RESIDUAL_TOL = 1e-10


def erase_edge(g: Graph, e: Edge) -> Graph:
    """Graph with the measured interaction removed."""
    return g.remove_edge(*e)


def apply_transposition(a: Assignment, pair: Edge) -> Assignment:
    """Exchange the occupants of two adjacent subgraph nodes.

    ``pair`` is given in subgraph labels and must be a subgraph edge.
    """
    e = normalize_edge(*pair)
    if e not in a.cg_subgraph.edges:
        raise ValidationError(f"{pair} is not an edge of the chosen subgraph")
    x, y = e
    pos = list(a.positions())
    u = pos.index(x)
    v = pos.index(y)
    new_map = list(a.ig_to_cg)
    new_map[u], new_map[v] = new_map[v], new_map[u]
    return Assignment(tuple(new_map), a.cg_subgraph_nodes, a.cg_subgraph)


@dataclass(frozen=True)
class BirkhoffDecomposition:
    """Convex combination of permutations: sum theta_j * P_j = D."""

    terms: tuple[tuple[float, tuple[int, ...]], ...]

    def weight_sum(self) -> float:
        return float(sum(t for t, _ in self.terms))

    def reconstruct(self) -> np.ndarray:
        n = len(self.terms[0][1])
        out = np.zeros((n, n))
        for theta, perm in self.terms:
            out[np.arange(n), perm] += theta
        return out


def _support_matching(support: np.ndarray) -> list[int] | None:
    """Perfect matching rows -> columns on the support (Kuhn's algorithm)."""
    n = support.shape[0]
    match_col = [-1] * n  # column -> row

    def try_row(r: int, seen: list[bool]) -> bool:
        for c in range(n):
            if support[r, c] and not seen[c]:
                seen[c] = True
                if match_col[c] < 0 or try_row(match_col[c], seen):
                    match_col[c] = r
                    return True
        return False

    for r in range(n):
        if not try_row(r, [False] * n):
            return None
    perm = [-1] * n
    for c, r in enumerate(match_col):
        perm[r] = c
    return perm


def _bottleneck_matching(residual: np.ndarray) -> list[int] | None:
    """Perfect matching maximizing its smallest entry (threshold bisection)."""
    values = np.unique(residual[residual > 0.0])[::-1]  # descending
    if values.size == 0:
        return None
    lo, hi = 0, values.size - 1
    best = None
    while lo <= hi:
        mid = (lo + hi) // 2
        perm = _support_matching(residual >= values[mid])
        if perm is not None:
            best = perm
            hi = mid - 1  # a higher threshold might still admit a matching
        else:
            lo = mid + 1
    return best


def birkhoff_decompose(d: np.ndarray) -> BirkhoffDecomposition:
    """Greedy convex-permutation decomposition of a doubly stochastic matrix.

    Repeatedly finds a perfect matching on the support, peels off the
    minimum matched entry, and stops once the residual mass is below
    1e-10. Matchings are chosen to maximize their smallest entry, so each
    peel zeroes at least one entry at the largest available weight and the
    term count stays within the classical (n-1)^2 + 1 bound.
    """
    d = np.asarray(d, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {d.shape}")
    n = d.shape[0]
    if (d < -ENTRY_TOL).any():
        raise ValidationError("matrix has negative entries")
    if (np.abs(d.sum(axis=0) - 1.0) > ROW_SUM_TOL).any() or (
        np.abs(d.sum(axis=1) - 1.0) > ROW_SUM_TOL
    ).any():
        raise ValidationError("rows and columns must each sum to 1")

    residual = np.clip(d, 0.0, None)
    scale = 1.0  # remaining row mass
    terms: list[tuple[float, tuple[int, ...]]] = []
    while scale > RESIDUAL_TOL:
        perm = _bottleneck_matching(residual)
        if perm is None:
            raise DecompositionError(
                "support admits no perfect matching; input is not doubly stochastic"
            )
        theta = float(min(residual[r, perm[r]] for r in range(n)))
        if theta <= 0.0:
            raise DecompositionError("matching bottleneck vanished before the residual")
        terms.append((theta, tuple(perm)))
        for r in range(n):
            residual[r, perm[r]] -= theta
        residual = np.clip(residual, 0.0, None)
        scale -= theta
    total = sum(t for t, _ in terms)
    terms = [(t / total, p) for t, p in terms]
    return BirkhoffDecomposition(tuple(terms))


def max_weight_term(d: BirkhoffDecomposition) -> tuple[float, tuple[int, ...]]:
    """Heaviest term; ties go to the lexicographically smallest permutation."""
    if not d.terms:
        raise ValidationError("empty decomposition")
    return min(d.terms, key=lambda term: (-term[0], term[1]))
