"""Approximate hyperedge strengths, cut sparsifiers, and mincuts."""

from .errors import HypergraphError, InvalidCutError, OracleLimitError, ParseError
from .hypergraph import ContractionMap, EdgeRecord, Hypergraph, normalize, parse, serialize
from .mincut import (
    CutResult,
    mincut_approx,
    mincut_bruteforce,
    mincut_exact,
    strength_bruteforce,
    strength_exact,
)
from .ordering import CertificateWeights, MAOrdering, certificate_unweighted, certificate_weighted, ma_ordering
from .sparsifier import SamplingParams, SparsifierResult, VerificationReport, sparsify, verify_cut_approx
from .strength import LightnessReport, StrengthMap, estimate_strengths, partition, weak_edges
from .windowing import approximate_strengths, max_spanning_forest, rough_strengths, star_graph, windows

__all__ = [
    "CertificateWeights",
    "ContractionMap",
    "CutResult",
    "EdgeRecord",
    "Hypergraph",
    "HypergraphError",
    "InvalidCutError",
    "LightnessReport",
    "MAOrdering",
    "OracleLimitError",
    "ParseError",
    "SamplingParams",
    "SparsifierResult",
    "StrengthMap",
    "VerificationReport",
    "approximate_strengths",
    "certificate_unweighted",
    "certificate_weighted",
    "estimate_strengths",
    "ma_ordering",
    "max_spanning_forest",
    "mincut_approx",
    "mincut_bruteforce",
    "mincut_exact",
    "normalize",
    "parse",
    "partition",
    "rough_strengths",
    "serialize",
    "sparsify",
    "star_graph",
    "strength_bruteforce",
    "strength_exact",
    "verify_cut_approx",
    "weak_edges",
    "windows",
]

__version__ = "0.1.0"
