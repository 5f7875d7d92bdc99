"""Strength-based importance sampling for (1 +/- eps) cut sparsifiers.

Each edge survives with a probability inversely proportional to its
strength estimate (clamped at 1) and is reweighted by the inverse of that
probability, so every cut weight is preserved in expectation.  The
per-edge coin is a counter-based generator keyed by (seed, edge id),
making the sample order-independent and exactly replayable.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import HypergraphError, OracleLimitError
from .hypergraph import Hypergraph
from .strength import StrengthMap
from .windowing import approximate_strengths

DEFAULT_ENUMERATION_LIMIT = 16


@dataclass(frozen=True)
class SamplingParams:
    epsilon: float = 0.1
    failure_exponent: int = 2
    seed: int = 0
    strength_source: str = "approx"  # approx | exact
    oracle_limit: int = 64

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise HypergraphError("epsilon must lie in (0, 1)")
        if self.failure_exponent < 1:
            raise HypergraphError("failure exponent d must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise HypergraphError("seed must be an unsigned 64-bit integer")
        if self.strength_source not in ("approx", "exact"):
            raise HypergraphError("strength source must be 'approx' or 'exact'")


@dataclass(frozen=True)
class SparsifierResult:
    hypergraph: Hypergraph            # kept edges, reweighted by 1/p_e
    probabilities: np.ndarray         # p_e for every original edge
    kept_ids: np.ndarray              # original id of each kept edge
    original_weights: np.ndarray      # weights of the input, for exact checks

    def exact_weight(self, kept_index: int) -> Fraction:
        """Reweighted value of a kept edge as an exact rational."""
        original = int(self.kept_ids[kept_index])
        return Fraction(int(self.original_weights[original])) / Fraction(
            float(self.probabilities[original])
        )


@dataclass
class CutCheck:
    mask: int
    true_weight: int
    sparse_weight: float
    rel_err: float


@dataclass
class VerificationReport:
    epsilon: float
    cuts: list[CutCheck] = field(default_factory=list)

    @property
    def max_rel_err(self) -> float:
        return max((c.rel_err for c in self.cuts), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_rel_err <= self.epsilon


def edge_uniform(seed: int, edge_id: int) -> float:
    """Deterministic uniform draw in [0, 1) for one (seed, edge) pair.

    Pinned generator: numpy Philox (4x64) with the seed as key and the
    edge id as block counter, one double per edge.
    """
    bits = np.random.Philox(counter=[0, 0, 0, edge_id], key=[seed, 0])
    return float(np.random.Generator(bits).random())


def sampling_threshold(n: int, rank: int, params: SamplingParams) -> float:
    """The strength value at which the sampling probability reaches 1 for
    a unit-weight edge."""
    return 3.0 * ((params.failure_exponent + 2) * math.log(n) + rank) / params.epsilon**2


def sampling_probabilities(h: Hypergraph, strengths: StrengthMap, params: SamplingParams) -> np.ndarray:
    """Per-edge keep probability min(rho * w(e) / gamma(e), 1).

    The weight factor makes the draw equivalent to sampling each of the
    w(e) unit copies of the edge, which is what keeps the sample size
    proportional to the weighted cost sum w(e)/gamma(e).
    """
    if h.m and int(np.min(strengths.gamma)) <= 0:
        raise HypergraphError("strength estimates must be positive")
    rho = sampling_threshold(h.n, h.rank, params)
    raw = rho * np.asarray(h.weights, dtype=np.float64) / strengths.gamma
    return np.minimum(raw, 1.0)


def _strengths_for(h: Hypergraph, params: SamplingParams) -> StrengthMap:
    if params.strength_source == "exact":
        from .mincut import strength_exact

        return strength_exact(h, limit=params.oracle_limit)
    return approximate_strengths(h)


def sparsify(h: Hypergraph, params: SamplingParams, strengths: StrengthMap | None = None) -> SparsifierResult:
    """Sample a reweighted subhypergraph preserving cuts within (1 +/- eps)."""
    if strengths is None:
        strengths = _strengths_for(h, params)
    probs = sampling_probabilities(h, strengths, params)
    draws = np.asarray([edge_uniform(params.seed, e) for e in range(h.m)])
    kept = np.nonzero(draws < probs)[0]
    edges = [(h.edge(int(e)), float(h.weight(int(e))) / float(probs[e])) for e in kept]
    sparse = Hypergraph(h.n, edges)
    return SparsifierResult(
        hypergraph=sparse,
        probabilities=probs,
        kept_ids=kept,
        original_weights=np.asarray(h.weights, dtype=np.int64),
    )


def enumerate_cut_masks(n: int):
    """All non-trivial cuts exactly once: vertex n-1 stays outside the side."""
    return range(1, 1 << (n - 1))


def mask_cut_weight(edge_masks: list[int], weights, mask: int):
    total = 0
    for em, w in zip(edge_masks, weights):
        inside = em & mask
        if inside and inside != em:
            total += w
    return total


def edge_bitmasks(h: Hypergraph) -> list[int]:
    masks = []
    for i in range(h.m):
        em = 0
        for v in h.edge(i):
            em |= 1 << v
        masks.append(em)
    return masks


def verify_cut_approx(
    h: Hypergraph,
    sparse: SparsifierResult | Hypergraph,
    epsilon: float,
    n_limit: int = DEFAULT_ENUMERATION_LIMIT,
) -> VerificationReport:
    """Enumerate every cut of `h` and compare against the sparsifier.

    Sparse cut weights are accumulated as exact rationals when a
    :class:`SparsifierResult` is given, so the report is free of rounding
    drift.  Refuses hypergraphs with more than `n_limit` vertices.
    """
    if h.n > n_limit:
        raise OracleLimitError(f"cut enumeration refused for n={h.n} > {n_limit}")
    if h.n < 2:
        raise HypergraphError("cut verification needs at least two vertices")
    if isinstance(sparse, SparsifierResult):
        sh = sparse.hypergraph
        sparse_weights = [sparse.exact_weight(i) for i in range(sh.m)]
    else:
        sh = sparse
        sparse_weights = [sh.weight(i) for i in range(sh.m)]
    if sh.n != h.n:
        raise HypergraphError("vertex counts differ")
    true_masks = edge_bitmasks(h)
    true_weights = [h.weight(i) for i in range(h.m)]
    sparse_masks = edge_bitmasks(sh)
    report = VerificationReport(epsilon=epsilon)
    for mask in enumerate_cut_masks(h.n):
        tw = mask_cut_weight(true_masks, true_weights, mask)
        sw = mask_cut_weight(sparse_masks, sparse_weights, mask)
        if tw == 0:
            rel = 0.0 if sw == 0 else math.inf
        else:
            rel = abs(Fraction(sw) - tw) / tw if isinstance(sw, Fraction) else abs(sw - tw) / tw
        report.cuts.append(CutCheck(mask, tw, float(sw), float(rel)))
    return report
