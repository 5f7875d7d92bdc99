"""Exact global mincut, brute-force oracles, and sparsified approximation.

The exact algorithm runs maximum-adjacency phases: the last vertex of each
ordering yields a candidate cut and is merged with the one before it.  The
brute-force variants exist as independent oracles for tests and small
inputs and refuse anything beyond their size guards.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import HypergraphError, OracleLimitError
from .hypergraph import Hypergraph, _first_occurrence_labels
from .ordering import ma_ordering
from .sparsifier import SamplingParams, SparsifierResult, sparsify

BRUTEFORCE_LIMIT = 20
STRENGTH_ORACLE_LIMIT = 64


@dataclass(frozen=True)
class CutResult:
    value: int | float
    side: tuple[int, ...]


@dataclass(frozen=True)
class ExactStrengthMap:
    gamma: np.ndarray


def _component_side(h: Hypergraph) -> tuple[int, ...]:
    _, labels = h.components()
    return tuple(int(v) for v in np.nonzero(labels == 0)[0])


def mincut_bruteforce(h: Hypergraph, limit: int = BRUTEFORCE_LIMIT) -> CutResult:
    """Exhaustive minimum cut; ties go to the smallest side bitmask."""
    if h.n > limit:
        raise OracleLimitError(f"brute-force mincut refused for n={h.n} > {limit}")
    if h.n < 2:
        raise HypergraphError("mincut needs at least two vertices")
    values = all_cut_weights(h)
    best = int(np.argmin(values))
    mask = best + 1
    side = tuple(v for v in range(h.n) if mask >> v & 1)
    value = values[best]
    return CutResult(int(value) if np.issubdtype(values.dtype, np.integer) else float(value), side)


def all_cut_weights(h: Hypergraph) -> np.ndarray:
    """Cut weights for masks 1 .. 2^(n-1)-1 (vertex n-1 fixed outside).

    Index i corresponds to the side with bitmask i+1.
    """
    n = h.n
    masks = np.arange(1, 1 << (n - 1), dtype=np.int64)
    values = np.zeros(
        len(masks),
        dtype=np.int64 if np.issubdtype(h.weights.dtype, np.integer) else np.float64,
    )
    for i in range(h.m):
        em = 0
        for v in h.edge(i):
            em |= 1 << v
        inside = masks & em
        crossing = (inside != 0) & (inside != em)
        values[crossing] += h.weight(i)
    return values


def mincut_exact(h: Hypergraph) -> CutResult:
    """Ordering-based global mincut (n-1 phases of MA ordering + merges)."""
    if h.n < 2:
        raise HypergraphError("mincut needs at least two vertices")
    kappa, _ = h.components()
    if kappa > 1:
        return CutResult(0 if np.issubdtype(h.weights.dtype, np.integer) else 0.0, _component_side(h))
    current = h
    groups = [frozenset([v]) for v in range(h.n)]
    best_value = None
    best_side: tuple[int, ...] = ()
    while current.n >= 2:
        ordering = ma_ordering(current)
        last = int(ordering.order[current.n - 1])
        prev = int(ordering.order[current.n - 2])
        iptr, ieid = current.incidence
        phase_value = sum(current.weight(int(e)) for e in ieid[iptr[last] : iptr[last + 1]])
        if best_value is None or phase_value < best_value:
            best_value = phase_value
            best_side = tuple(sorted(groups[last]))
        # Merge the two last-ordered vertices and repeat.
        vertex_map = np.arange(current.n, dtype=np.int64)
        vertex_map[max(last, prev)] = min(last, prev)
        _, labels = _first_occurrence_labels(vertex_map)
        merged = groups[last] | groups[prev]
        groups = [g for i, g in enumerate(groups) if i not in (last, prev)]
        groups.insert(int(labels[min(last, prev)]), merged)
        current, _ = current._relabel(labels, current.n - 1)
    return CutResult(best_value, best_side)


def strength_exact(
    h: Hypergraph, limit: int = STRENGTH_ORACLE_LIMIT, use_bruteforce: bool = False
) -> ExactStrengthMap:
    """Exact strengths via recursive mincut splitting.

    Crossing edges of a component mincut have exactly that strength;
    everything else keeps the maximum over the recursion on both sides.
    """
    if h.n > limit:
        raise OracleLimitError(f"exact strengths refused for n={h.n} > {limit}")
    gamma = np.zeros(h.m, dtype=np.int64)
    minimizer = mincut_bruteforce if use_bruteforce else mincut_exact

    def recurse(sub: Hypergraph, edge_ids: np.ndarray):
        if sub.m == 0:
            return
        _, labels = sub.components()
        for c in range(int(labels.max()) + 1):
            comp = np.nonzero(labels == c)[0]
            if len(comp) < 2:
                continue
            inner, inner_edges, _ = sub.induced(comp)
            if inner.m == 0:
                continue
            cut = minimizer(inner)
            ids = edge_ids[inner_edges]
            gamma[ids] = np.maximum(gamma[ids], int(cut.value))
            side = set(cut.side)
            rest = [v for v in range(inner.n) if v not in side]
            for part in (sorted(side), rest):
                part_h, part_edges, _ = inner.induced(part)
                recurse(part_h, ids[part_edges])

    recurse(h, np.arange(h.m, dtype=np.int64))
    return ExactStrengthMap(gamma)


def strength_bruteforce(h: Hypergraph, limit: int = 8) -> ExactStrengthMap:
    """Definitional oracle: max over vertex subsets containing the edge of
    the induced subhypergraph's brute-force mincut."""
    if h.n > limit:
        raise OracleLimitError(f"definitional strength oracle refused for n={h.n} > {limit}")
    gamma = np.zeros(h.m, dtype=np.int64)
    for mask in range(1, 1 << h.n):
        subset = [v for v in range(h.n) if mask >> v & 1]
        if len(subset) < 2:
            continue
        sub, edge_ids, _ = h.induced(subset)
        if sub.m == 0:
            continue
        kappa, _ = sub.components()
        if kappa > 1:
            continue
        value = int(mincut_bruteforce(sub).value)
        gamma[edge_ids] = np.maximum(gamma[edge_ids], value)
    return ExactStrengthMap(gamma)


def mincut_approx(h: Hypergraph, epsilon: float, params: SamplingParams) -> tuple[CutResult, SparsifierResult]:
    """Sparsify (at epsilon/3), cut the sample exactly, then re-evaluate
    the winning side on the original hypergraph, so the returned value is
    always a genuine cut weight of `h`."""
    if not 0 < epsilon < 1:
        raise HypergraphError("epsilon must lie in (0, 1)")
    if h.n < 2:
        raise HypergraphError("mincut needs at least two vertices")
    kappa, _ = h.components()
    if kappa > 1:
        empty = SparsifierResult(h, np.ones(h.m), np.arange(h.m, dtype=np.int64),
                                 np.asarray(h.weights, dtype=np.int64))
        return CutResult(0, _component_side(h)), empty
    scaled = SamplingParams(
        epsilon=epsilon / 3,
        failure_exponent=params.failure_exponent,
        seed=params.seed,
        strength_source=params.strength_source,
        oracle_limit=params.oracle_limit,
    )
    result = sparsify(h, scaled)
    sample = result.hypergraph
    kappa_s, _ = sample.components()
    if kappa_s > 1:
        side = _component_side(sample)
    else:
        side = mincut_exact(sample).side
    value = h.cut_weight(side)
    return CutResult(value, side), result
