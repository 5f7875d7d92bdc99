"""Lower-bounding strength estimation via certificates and contraction.

The cascade has three layers.  `partition(h, k)` returns a light edge set
containing every edge that crosses a cut of weight below k, by repeatedly
taking a k-sparse certificate and contracting the rest.  `weak_edges(h, k)`
iterates `partition` to sweep up every edge of strength below k.
`estimate_strengths` removes weak edges at geometrically growing
thresholds; the threshold at which an edge leaves is its estimate.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import HypergraphError
from .hypergraph import Hypergraph
from .ordering import certificate_weighted, ma_ordering


@dataclass(frozen=True)
class LightnessReport:
    """Removal bookkeeping: `removed_weight <= ell * (kappa_after - kappa_before)`."""

    removed_weight: int
    kappa_before: int
    kappa_after: int
    ell: int

    @property
    def satisfied(self) -> bool:
        return self.removed_weight <= self.ell * (self.kappa_after - self.kappa_before)


@dataclass(frozen=True)
class StrengthMap:
    """Per-edge strength estimates with removal provenance."""

    gamma: np.ndarray   # estimate per edge, positive
    level: np.ndarray   # cascade iteration that removed the edge
    window: np.ndarray | None = None

    def cost(self, weights: np.ndarray) -> float:
        return float(np.sum(np.asarray(weights, dtype=np.float64) / self.gamma))


def _check_no_singletons(h: Hypergraph):
    if h.m and int(np.min(h._edge_lengths)) < 2:
        raise HypergraphError("strength estimation requires edges with >= 2 vertices")


def _partition_ids(h: Hypergraph, k: int, ids: np.ndarray) -> np.ndarray:
    kappa, _ = h.components()
    if h.total_weight <= 2 * k * (h.n - kappa):
        return ids
    wprime = certificate_weighted(h, k).weights
    residual = np.nonzero(wprime < h.weights)[0]
    if not len(residual):
        # Certificate kept every edge whole; the threshold test must hold
        # on the next level, so stop here.
        return ids
    contracted, cmap = h.contract_edges(residual)
    survivors = np.nonzero(cmap.edge_map >= 0)[0]
    return _partition_ids(contracted, k, ids[survivors])


def partition(h: Hypergraph, k: int) -> tuple[np.ndarray, LightnessReport]:
    """A 2k-light edge set containing every edge crossing a cut of weight < k.

    Returned ids refer to `h`; the report certifies the lightness bound.
    """
    if k < 1:
        raise HypergraphError("partition threshold k must be positive")
    _check_no_singletons(h)
    ids = _partition_ids(h, k, np.arange(h.m, dtype=np.int64))
    return ids, _report(h, ids, 2 * k)


def _report(h: Hypergraph, removed: np.ndarray, ell: int) -> LightnessReport:
    kappa_before, _ = h.components()
    remaining, _ = h.delete_edges(removed)
    kappa_after, _ = remaining.components()
    weight = int(sum(h.weights[removed].tolist())) if len(removed) else 0
    return LightnessReport(weight, kappa_before, kappa_after, ell)


def weak_edges(h: Hypergraph, k: int) -> tuple[np.ndarray, LightnessReport]:
    """A 4rk-light superset of the edges with strength below k."""
    if k < 1:
        raise HypergraphError("weak-edge threshold k must be positive")
    _check_no_singletons(h)
    r = h.rank
    if h.m == 0:
        return np.empty(0, np.int64), _report(h, np.empty(0, np.int64), 4 * max(r, 1) * k)
    rounds = 1 + max(0, math.ceil(math.log2(h.n))) if h.n > 1 else 1
    current = h
    current_ids = np.arange(h.m, dtype=np.int64)
    out: list[np.ndarray] = []
    for _ in range(rounds):
        picked, _ = partition(current, 2 * r * k)
        if not len(picked):
            break  # partition is deterministic, further rounds are no-ops
        out.append(current_ids[picked])
        current, kept = current.delete_edges(picked)
        current_ids = current_ids[kept]
        if current.m == 0:
            break
    ids = np.sort(np.concatenate(out)) if out else np.empty(0, np.int64)
    return ids, _report(h, ids, 4 * r * k)


def estimate_strengths(h: Hypergraph, k_base: int = 1) -> StrengthMap:
    """Strength estimates that never exceed the true strength.

    `k_base` must lower-bound every edge strength (1 is always valid for
    integer weights).  The estimates additionally satisfy the cost bound
    sum of w(e)/gamma(e) <= 8 * rank * (n - 1).
    """
    if k_base < 1:
        raise HypergraphError("k_base must be positive")
    _check_no_singletons(h)
    gamma = np.zeros(h.m, dtype=np.int64)
    level = np.zeros(h.m, dtype=np.int64)
    current = h
    current_ids = np.arange(h.m, dtype=np.int64)
    i = 1
    # Every edge is gone once the threshold passes the total weight.
    limit = 3 + math.ceil(math.log2(max(2, int(h.total_weight)) / k_base))
    while current.m > 0:
        if i > limit:
            raise AssertionError("estimation failed to terminate")
        found, _ = weak_edges(current, (2**i) * k_base)
        if len(found):
            removed = current_ids[found]
            gamma[removed] = (2 ** (i - 1)) * k_base
            level[removed] = i
            current, kept = current.delete_edges(found)
            current_ids = current_ids[kept]
        i += 1
    return StrengthMap(gamma, level)


def estimate_strengths_weighted(h: Hypergraph, b: int, weight_ratio: int | None = None) -> StrengthMap:
    """Weighted estimation seeded with a strength lower bound `b`.

    `weight_ratio`, when given, asserts the caller's bound total_weight <=
    b * weight_ratio; the number of cascade iterations is logarithmic in it.
    """
    if b < 1:
        raise HypergraphError("strength lower bound b must be positive")
    if weight_ratio is not None and h.total_weight > b * weight_ratio:
        raise HypergraphError("total weight exceeds b * weight_ratio")
    return estimate_strengths(h, k_base=b)
