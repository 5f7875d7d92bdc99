"""Maximum-adjacency orderings and k-sparse connectivity certificates.

The vertex order is greedy: components are processed in ascending order of
their smallest vertex id, each started at that vertex; at every step the
unordered vertex with the largest total weight of already-touched incident
edges is appended (ties to the smallest id).  The head of an edge is the
vertex at which the edge first has two ordered endpoints; sorting edges by
head position (ties by edge id) gives the head ordering used by the
certificates.

An edge is a backward edge of every one of its vertices except the first
one in the ordering, and each vertex ranks its backward edges by the
position of that first vertex (the moment the edge is "offered" to it
during a scan of the ordering).  On graphs this is the classic
scan-first-search rule; the multi-owner form is what makes the
certificate preserve small cuts in hypergraphs, since a cut separating a
late vertex of e can only be covered through that vertex's own list.
"""

from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import HypergraphError
from .hypergraph import Hypergraph


@dataclass(frozen=True)
class MAOrdering:
    order: np.ndarray          # position -> vertex
    position: np.ndarray       # vertex -> position
    first_vertex: np.ndarray   # edge -> its earliest-ordered vertex
    head_vertex: np.ndarray    # edge -> head vertex, -1 for edges with < 2 vertices
    head_position: np.ndarray  # edge -> position of the head vertex
    head_order: np.ndarray     # edge ids sorted by (head position, edge id)


@dataclass(frozen=True)
class CertificateWeights:
    """Per-edge certificate weights w' with 0 <= w'(e) <= w(e)."""

    weights: np.ndarray

    def support(self) -> np.ndarray:
        return np.nonzero(self.weights > 0)[0]

    def total(self) -> int:
        return int(sum(self.weights.tolist()))


@njit(cache=True)
def _heap_push(hkey, hv, size, k, v):
    i = size
    hkey[i] = k
    hv[i] = v
    while i > 0:
        parent = (i - 1) // 2
        if hkey[parent] > hkey[i] or (hkey[parent] == hkey[i] and hv[parent] < hv[i]):
            break
        hkey[parent], hkey[i] = hkey[i], hkey[parent]
        hv[parent], hv[i] = hv[i], hv[parent]
        i = parent
    return size + 1


@njit(cache=True)
def _heap_pop(hkey, hv, size):
    size -= 1
    hkey[0], hkey[size] = hkey[size], hkey[0]
    hv[0], hv[size] = hv[size], hv[0]
    i = 0
    while True:
        left = 2 * i + 1
        if left >= size:
            break
        best = left
        right = left + 1
        if right < size and (
            hkey[right] > hkey[left] or (hkey[right] == hkey[left] and hv[right] < hv[left])
        ):
            best = right
        if hkey[i] > hkey[best] or (hkey[i] == hkey[best] and hv[i] < hv[best]):
            break
        hkey[best], hkey[i] = hkey[i], hkey[best]
        hv[best], hv[i] = hv[i], hv[best]
        i = best
    return size


@njit(cache=True)
def _ma_core(n, eptr, everts, w, iptr, ieid, key, hkey, hv, order, position, first_v, head_v, head_p):
    m = len(eptr) - 1
    count = np.zeros(m, dtype=np.int64)
    size = 0
    t = 0
    for seed in range(n):
        if position[seed] >= 0:
            continue
        size = _heap_push(hkey, hv, size, key[seed], seed)
        while size > 0:
            size = _heap_pop(hkey, hv, size)
            v = hv[size]
            if position[v] >= 0 or hkey[size] != key[v]:
                continue  # stale entry
            position[v] = t
            order[t] = v
            for j in range(iptr[v], iptr[v + 1]):
                e = ieid[j]
                c = count[e]
                if c == 0:
                    first_v[e] = v
                    for idx in range(eptr[e], eptr[e + 1]):
                        u = everts[idx]
                        if position[u] < 0:
                            key[u] += w[e]
                            size = _heap_push(hkey, hv, size, key[u], u)
                elif c == 1:
                    head_v[e] = v
                    head_p[e] = t
                count[e] = c + 1
            t += 1


def ma_ordering(h: Hypergraph) -> MAOrdering:
    n, m = h.n, h.m
    iptr, ieid = h.incidence
    key = np.zeros(n, dtype=h.weights.dtype)
    cap = h.size + n + 1
    hkey = np.empty(cap, dtype=h.weights.dtype)
    hv = np.empty(cap, dtype=np.int64)
    order = np.empty(n, dtype=np.int64)
    position = np.full(n, -1, dtype=np.int64)
    first_v = np.full(m, -1, dtype=np.int64)
    head_v = np.full(m, -1, dtype=np.int64)
    head_p = np.full(m, -1, dtype=np.int64)
    _ma_core(n, h._ptr, h._verts, h.weights, iptr, ieid, key, hkey, hv, order, position, first_v, head_v, head_p)
    headed = np.nonzero(head_p >= 0)[0]
    head_order = headed[np.lexsort((headed, head_p[headed]))]
    return MAOrdering(order, position, first_v, head_v, head_p, head_order)


def _backward_pairs(h: Hypergraph, ordering: MAOrdering):
    """Backward (vertex, edge) pairs sorted into per-vertex scan order.

    Returns ``(vs, es, starts)``: pairs grouped by owning vertex, sorted
    inside each group by (position of the edge's first vertex, edge id),
    with a group-start mask.  An edge is backward for each of its vertices
    except the first-ordered one, so there are size - m pairs overall.
    """
    edge_of_pos = np.repeat(np.arange(h.m, dtype=np.int64), h._edge_lengths)
    mask = h._verts != ordering.first_vertex[edge_of_pos]
    vs = h._verts[mask]
    es = edge_of_pos[mask]
    sel = np.lexsort((es, ordering.position[ordering.first_vertex[es]], vs))
    vs, es = vs[sel], es[sel]
    starts = np.zeros(len(vs), dtype=bool)
    if len(vs):
        starts[0] = True
        starts[1:] = vs[1:] != vs[:-1]
    return vs, es, starts


def certificate_unweighted(h: Hypergraph, k: int) -> set[int]:
    """Union over vertices of their first k backward edges in head order.

    The result preserves min(cut weight, k) for every cut and has at most
    k(n-1) edges, since each vertex but the first of its component
    contributes at most k.  Requires all weights equal to 1.
    """
    if k <= 0:
        raise HypergraphError("certificate threshold k must be positive")
    if not h.is_unit_weighted:
        raise HypergraphError("certificate_unweighted requires unit weights")
    ordering = ma_ordering(h)
    _, es, starts = _backward_pairs(h, ordering)
    if not len(es):
        return set()
    group_no = np.cumsum(starts) - 1
    offsets = np.nonzero(starts)[0]
    rank = np.arange(len(es)) - offsets[group_no]
    return set(int(e) for e in es[rank < k])


def certificate_weighted(h: Hypergraph, k: int, ordering: MAOrdering | None = None) -> CertificateWeights:
    """Greedy per-vertex weight caps along the head ordering.

    Scanning the backward edges of each vertex in head order, an edge gets
    whatever part of its weight still fits under the per-vertex budget k;
    the certificate weight is the maximum an edge receives from any of its
    vertices, so the total stays at most k(n-1).
    """
    if k <= 0:
        raise HypergraphError("certificate threshold k must be positive")
    if ordering is None:
        ordering = ma_ordering(h)
    wprime = np.zeros(h.m, dtype=h.weights.dtype)
    _, es, starts = _backward_pairs(h, ordering)
    if not len(es):
        return CertificateWeights(wprime)
    w = h.weights[es]
    cs = np.cumsum(w)
    group_no = np.cumsum(starts) - 1
    offsets = np.nonzero(starts)[0]
    base = np.concatenate(([0], cs))[offsets][group_no]
    prev = cs - w - base
    np.maximum.at(wprime, es, np.clip(k - prev, 0, w))
    return CertificateWeights(wprime)
