"""Weighted hypergraph values: cuts, induced subhypergraphs, minors, and file I/O.

A :class:`Hypergraph` is immutable after construction.  Every operation
returns a new value together with a mapping back to the edge ids of the
input, so edge identities can be tracked through arbitrary chains of
deletions and contractions.
"""

from functools import cached_property
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np
from numba import njit
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import HypergraphError, InvalidCutError, ParseError

# Keeps every cut-weight sum representable in int64 (fuzzing can push the
# total close to 2^63 otherwise).
MAX_TOTAL_WEIGHT = 2**62


class EdgeRecord(NamedTuple):
    vertices: tuple[int, ...]
    weight: int | float


@dataclass(frozen=True)
class ContractionMap:
    """Surjection of old vertices onto new ones plus the fate of each edge.

    ``edge_map[i]`` is the new id of old edge ``i``, or ``-1`` if the edge
    was absorbed (all its vertices merged into a single one).
    """

    vertex_map: np.ndarray
    edge_map: np.ndarray

    def image(self, vertex: int) -> int:
        return int(self.vertex_map[vertex])

    def kept(self, edge: int) -> bool:
        return self.edge_map[edge] >= 0


class UnionFind:
    """Array-backed union-find with union by size and path halving."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # Deterministic: on equal size the smaller index wins.
        if self.size[ra] < self.size[rb] or (self.size[ra] == self.size[rb] and rb < ra):
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True

    def roots(self) -> np.ndarray:
        parent = np.asarray(self.parent, dtype=np.int64)
        while True:
            grand = parent[parent]
            if np.array_equal(grand, parent):
                return parent
            parent = grand


@njit(cache=True)
def _union_edges_core(parent, eptr, everts, ids):
    """Union every vertex of each listed edge into one class, in place.

    Root choice is irrelevant downstream: classes are relabelled by their
    smallest member, so any union strategy yields the same partition.
    """
    for t in range(ids.shape[0]):
        e = ids[t]
        for j in range(eptr[e] + 1, eptr[e + 1]):
            x = everts[eptr[e]]
            y = everts[j]
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            while parent[y] != y:
                parent[y] = parent[parent[y]]
                y = parent[y]
            if x < y:
                parent[y] = x
            elif y < x:
                parent[x] = y


def _flatten_parents(parent: np.ndarray) -> np.ndarray:
    while True:
        grand = parent[parent]
        if np.array_equal(grand, parent):
            return parent
        parent = grand


def _first_occurrence_labels(roots: np.ndarray) -> tuple[int, np.ndarray]:
    """Relabel equivalence classes densely, ordered by smallest member."""
    if roots.size == 0:
        return 0, roots.astype(np.int64)
    _, first, inverse = np.unique(roots, return_index=True, return_inverse=True)
    rank = np.empty(first.size, dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(first.size)
    return int(first.size), rank[inverse]


class Hypergraph:
    """An immutable weighted hypergraph on vertices ``0..n-1``.

    Edges are stored in CSR form (offsets into a flat, per-edge-sorted
    vertex array).  Weights are positive integers for parsed inputs;
    positive floats are accepted so that reweighted (sparsified)
    hypergraphs can reuse the same operations.
    """

    def __init__(self, n: int, edges: Iterable[tuple[Sequence[int], int | float]] = ()):
        if n < 0:
            raise HypergraphError("vertex count must be non-negative")
        verts: list[int] = []
        ptr = [0]
        weights = []
        for vs, w in edges:
            vs = sorted(int(v) for v in vs)
            if not vs:
                raise HypergraphError("edge with no vertices")
            if vs[0] < 0 or vs[-1] >= n:
                raise HypergraphError(f"vertex id out of range in edge {vs}")
            for a, b in zip(vs, vs[1:]):
                if a == b:
                    raise HypergraphError(f"duplicate vertex {a} in edge")
            if w <= 0:
                raise HypergraphError(f"non-positive edge weight {w}")
            verts.extend(vs)
            ptr.append(len(verts))
            weights.append(w)
        self._init_arrays(
            n,
            np.asarray(ptr, dtype=np.int64),
            np.asarray(verts, dtype=np.int64),
            _weight_array(weights),
        )

    def _init_arrays(self, n, ptr, verts, w):
        self._n = int(n)
        self._ptr = ptr
        self._verts = verts
        self._w = w
        if np.issubdtype(w.dtype, np.integer):
            total = int(sum(w.tolist()))
            if total > MAX_TOTAL_WEIGHT:
                raise HypergraphError("total edge weight exceeds the 2^62 bound")
        else:
            total = float(w.sum())
        self._total_weight = total

    @classmethod
    def _from_csr(cls, n: int, ptr: np.ndarray, verts: np.ndarray, w: np.ndarray) -> "Hypergraph":
        self = cls.__new__(cls)
        self._init_arrays(n, ptr, verts, w)
        return self

    # -- basic accessors -------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self._w)

    @property
    def size(self) -> int:
        """Total degree p, the sum of edge cardinalities."""
        return int(self._ptr[-1])

    @cached_property
    def rank(self) -> int:
        if self.m == 0:
            return 0
        return int(np.max(self._edge_lengths))

    @property
    def total_weight(self) -> int | float:
        return self._total_weight

    @property
    def weights(self) -> np.ndarray:
        return self._w

    @property
    def is_unit_weighted(self) -> bool:
        return self.m == 0 or bool(np.all(self._w == 1))

    @cached_property
    def _edge_lengths(self) -> np.ndarray:
        return np.diff(self._ptr)

    def edge(self, i: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self._verts[self._ptr[i] : self._ptr[i + 1]])

    def weight(self, i: int) -> int | float:
        w = self._w[i]
        return int(w) if np.issubdtype(self._w.dtype, np.integer) else float(w)

    def edges(self) -> list[EdgeRecord]:
        return [EdgeRecord(self.edge(i), self.weight(i)) for i in range(self.m)]

    @cached_property
    def incidence(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR map vertex -> incident edge ids: ``(offsets, edge_ids)``."""
        edge_of_pos = np.repeat(np.arange(self.m, dtype=np.int64), self._edge_lengths)
        order = np.argsort(self._verts, kind="stable")
        ids = edge_of_pos[order]
        counts = np.bincount(self._verts, minlength=self.n)
        offsets = np.concatenate(([0], np.cumsum(counts))).astype(np.int64)
        return offsets, ids

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (
            self._n == other._n
            and np.array_equal(self._ptr, other._ptr)
            and np.array_equal(self._verts, other._verts)
            and np.array_equal(self._w, other._w)
        )

    def __hash__(self):
        return hash((self._n, self._verts.tobytes(), self._w.tobytes()))

    def __repr__(self):
        return f"Hypergraph(n={self.n}, m={self.m}, p={self.size}, r={self.rank}, W={self.total_weight})"

    # -- cuts ------------------------------------------------------------

    def _side_mask(self, side: Iterable[int]) -> np.ndarray:
        mask = np.zeros(self.n, dtype=bool)
        for v in side:
            if not 0 <= v < self.n:
                raise HypergraphError(f"vertex id {v} out of range")
            mask[v] = True
        inside = int(mask.sum())
        if inside == 0 or inside == self.n:
            raise InvalidCutError("cut side must be a proper non-empty vertex subset")
        return mask

    def cut_edges(self, side: Iterable[int]) -> set[int]:
        """Edge ids with at least one vertex inside `side` and one outside."""
        mask = self._side_mask(side)
        if self.m == 0:
            return set()
        inside = mask[self._verts].astype(np.int64)
        counts = np.add.reduceat(inside, self._ptr[:-1])
        crossing = (counts > 0) & (counts < self._edge_lengths)
        return set(int(i) for i in np.nonzero(crossing)[0])

    def cut_weight(self, side: Iterable[int]) -> int | float:
        ids = self.cut_edges(side)
        total = sum(self.weight(i) for i in ids)
        return total if ids else (0 if np.issubdtype(self._w.dtype, np.integer) else 0.0)

    # -- subhypergraphs and minors --------------------------------------

    def induced(self, subset: Iterable[int]) -> tuple["Hypergraph", np.ndarray, np.ndarray]:
        """Subhypergraph on `subset`, keeping edges fully inside it.

        Returns ``(sub, edge_ids, vertices)`` where ``edge_ids[j]`` is the
        id in this hypergraph of sub-edge ``j`` and ``vertices[u]`` is the
        original id of sub-vertex ``u``.
        """
        keep_v = sorted(set(int(v) for v in subset))
        for v in keep_v:
            if not 0 <= v < self.n:
                raise HypergraphError(f"vertex id {v} out of range")
        vertices = np.asarray(keep_v, dtype=np.int64)
        new_of_old = np.full(self.n, -1, dtype=np.int64)
        new_of_old[vertices] = np.arange(len(keep_v))
        if self.m == 0:
            sub = Hypergraph._from_csr(
                len(keep_v), np.zeros(1, np.int64), np.empty(0, np.int64), self._w[:0]
            )
            return sub, np.empty(0, np.int64), vertices
        mapped = new_of_old[self._verts]
        bad = np.logical_or.reduceat(mapped < 0, self._ptr[:-1])
        keep_e = np.nonzero(~bad)[0]
        sub, _ = self._take_edges(keep_e, vertex_map=new_of_old, new_n=len(keep_v))
        return sub, keep_e, vertices

    def delete_edges(self, remove: Iterable[int]) -> tuple["Hypergraph", np.ndarray]:
        """Drop the given edge ids; returns the new value plus kept ids."""
        drop = np.zeros(self.m, dtype=bool)
        for i in remove:
            if not 0 <= i < self.m:
                raise HypergraphError(f"edge id {i} out of range")
            drop[i] = True
        keep = np.nonzero(~drop)[0]
        new, _ = self._take_edges(keep)
        return new, keep

    def _take_edges(self, keep: np.ndarray, vertex_map=None, new_n=None):
        lengths = self._edge_lengths[keep]
        ptr = np.concatenate(([0], np.cumsum(lengths))).astype(np.int64)
        mask = np.zeros(self.m, dtype=bool)
        mask[keep] = True
        verts = self._verts[np.repeat(mask, self._edge_lengths)]
        if vertex_map is not None:
            verts = vertex_map[verts]
        new = Hypergraph._from_csr(
            self.n if new_n is None else new_n, ptr, verts, self._w[keep]
        )
        return new, keep

    def contract_edges(self, merge: Iterable[int]) -> tuple["Hypergraph", ContractionMap]:
        """Simultaneously contract the given edges (union-find over all of them).

        Surviving edges have their vertex lists mapped and deduplicated;
        edges whose image has fewer than two distinct vertices are absorbed.
        """
        ids = sorted(set(int(i) for i in merge))
        for i in ids:
            if not 0 <= i < self.m:
                raise HypergraphError(f"edge id {i} out of range")
        parent = np.arange(self.n, dtype=np.int64)
        _union_edges_core(parent, self._ptr, self._verts, np.asarray(ids, dtype=np.int64))
        new_n, labels = _first_occurrence_labels(_flatten_parents(parent))
        new, edge_map = self._relabel(labels, new_n)
        return new, ContractionMap(vertex_map=labels, edge_map=edge_map)

    def _relabel(self, vertex_map: np.ndarray, new_n: int) -> tuple["Hypergraph", np.ndarray]:
        """Apply a vertex surjection; dedupe edges, absorb the trivial ones.

        Returns the new hypergraph and an ``edge_map`` (old id -> new id or -1).
        """
        m = self.m
        edge_map = np.full(m, -1, dtype=np.int64)
        if m == 0:
            return (
                Hypergraph._from_csr(new_n, np.zeros(1, np.int64), np.empty(0, np.int64), self._w),
                edge_map,
            )
        mapped = vertex_map[self._verts]
        edge_of_pos = np.repeat(np.arange(m, dtype=np.int64), self._edge_lengths)
        order = np.lexsort((mapped, edge_of_pos))
        sv = mapped[order]
        se = edge_of_pos[order]
        fresh = np.ones(len(sv), dtype=bool)
        fresh[1:] = (sv[1:] != sv[:-1]) | (se[1:] != se[:-1])
        new_lengths = np.bincount(se[fresh], minlength=m)
        keep = np.nonzero(new_lengths >= 2)[0]
        edge_map[keep] = np.arange(len(keep))
        keep_pos = fresh & (new_lengths[se] >= 2)
        verts = sv[keep_pos]
        ptr = np.concatenate(([0], np.cumsum(new_lengths[keep]))).astype(np.int64)
        new = Hypergraph._from_csr(new_n, ptr, verts, self._w[keep])
        return new, edge_map

    # -- connectivity ----------------------------------------------------

    def components(self) -> tuple[int, np.ndarray]:
        """Number of connected components and a dense per-vertex labelling."""
        if self.n == 0:
            return 0, np.empty(0, dtype=np.int64)
        if self.size == 0:
            return self.n, np.arange(self.n, dtype=np.int64)
        centers = np.repeat(self._verts[self._ptr[:-1]], self._edge_lengths)
        graph = coo_matrix(
            (np.ones(len(centers), dtype=np.int8), (centers, self._verts)),
            shape=(self.n, self.n),
        )
        _, raw = connected_components(graph, directed=False)
        return _first_occurrence_labels(raw)


def _weight_array(weights: list) -> np.ndarray:
    if not weights:
        return np.empty(0, dtype=np.int64)
    if all(isinstance(w, (int, np.integer)) for w in weights):
        arr = np.asarray(weights, dtype=np.int64)
    else:
        arr = np.asarray(weights, dtype=np.float64)
    return arr


# -- text format ---------------------------------------------------------
#
# Line 1: `n m weighted_flag` (flag 0 or 1); then m lines, one per edge:
# `w v1 v2 ... vk` when weighted, else `v1 ... vk`.  Vertices are 1-indexed
# on disk, `#` starts a comment line, blank lines are ignored.


def parse(text: str) -> Hypergraph:
    """Parse the text format.  Single-vertex edges are dropped (they can
    never cross a cut), which is the only normalization applied."""
    lines = text.splitlines()
    header = None
    edges: list[tuple[list[int], int]] = []
    n = m = flag = 0
    seen_edges = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 3:
                raise ParseError("header must be `n m weighted_flag`", lineno)
            try:
                n, m, flag = (int(f) for f in fields)
            except ValueError:
                raise ParseError("header fields must be integers", lineno) from None
            if n < 0 or m < 0 or flag not in (0, 1):
                raise ParseError("invalid header values", lineno)
            header = (n, m, flag)
            continue
        seen_edges += 1
        if seen_edges > m:
            raise ParseError(f"more than {m} edge lines", lineno)
        try:
            values = [int(f) for f in fields]
        except ValueError:
            raise ParseError("edge fields must be integers", lineno) from None
        if flag:
            if len(values) < 2:
                raise ParseError("weighted edge line needs a weight and a vertex", lineno)
            weight, raw_vs = values[0], values[1:]
        else:
            if len(values) < 1:
                raise ParseError("empty edge line", lineno)
            weight, raw_vs = 1, values
        if weight <= 0:
            raise ParseError(f"non-positive weight {weight}", lineno)
        if weight > MAX_TOTAL_WEIGHT:
            raise ParseError(f"weight {weight} exceeds the 2^62 bound", lineno)
        vs = []
        seen = set()
        for v in raw_vs:
            if not 1 <= v <= n:
                raise ParseError(f"vertex id {v} out of range 1..{n}", lineno)
            if v in seen:
                raise ParseError(f"duplicate vertex {v} in edge", lineno)
            seen.add(v)
            vs.append(v - 1)
        if len(vs) >= 2:
            edges.append((vs, weight))
    if header is None:
        raise ParseError("missing header", len(lines) or 1)
    if seen_edges != m:
        raise ParseError(f"expected {m} edge lines, found {seen_edges}", len(lines) or 1)
    return Hypergraph(n, edges)


def serialize(h: Hypergraph, force_weighted: bool = False) -> str:
    """Render the text format: vertices ascending, edges in id order."""
    weighted = force_weighted or not h.is_unit_weighted
    out = [f"{h.n} {h.m} {1 if weighted else 0}"]
    integer = np.issubdtype(h.weights.dtype, np.integer)
    for i in range(h.m):
        vs = " ".join(str(v + 1) for v in h.edge(i))
        if weighted:
            w = h.weight(i)
            ws = str(w) if integer else format(w, ".12g")
            out.append(f"{ws} {vs}")
        else:
            out.append(vs)
    return "\n".join(out) + "\n"


def normalize(text: str) -> str:
    return serialize(parse(text))
