"""Strongly-polynomial weighted estimation by strength windowing.

Each hyperedge is replaced by a star (center = smallest vertex) to get a
weighted multigraph; bottleneck weights on its maximum spanning forest
give a rough per-edge strength d_e with d_e <= strength <= p * d_e.  The
intervals [d_e, p*d_e] are merged into disjoint windows, and the cascade
runs once per window on a hypergraph where heavier windows are contracted
and lighter ones deleted.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import HypergraphError
from .hypergraph import (
    Hypergraph,
    UnionFind,
    _first_occurrence_labels,
    _flatten_parents,
    _union_edges_core,
)
from .strength import StrengthMap, estimate_strengths_weighted


@dataclass(frozen=True)
class StarGraph:
    """Multigraph replacing each hyperedge by a star; parallel edges are
    kept apart and remember their originating hyperedge."""

    n: int
    u: np.ndarray
    v: np.ndarray
    weight: np.ndarray
    origin: np.ndarray  # star edge -> hyperedge id


@dataclass
class SpanningForest:
    """Maximum-weight spanning forest with ancestor tables for bottleneck
    (minimum edge weight on a tree path) queries in O(log n)."""

    n: int
    parent: np.ndarray
    parent_weight: np.ndarray
    depth: np.ndarray
    component: np.ndarray
    up: np.ndarray      # (levels, n) ancestor table
    upmin: np.ndarray   # (levels, n) minimum edge weight along each jump

    @property
    def _infinity(self):
        # Integer forests use a sentinel so bottleneck values stay exact.
        if np.issubdtype(self.upmin.dtype, np.integer):
            return np.iinfo(self.upmin.dtype).max
        return np.inf

    def bottleneck(self, a: int, b: int) -> int | float | None:
        """Minimum edge weight on the a-b path; +inf for a == b, None if
        the vertices lie in different trees."""
        values, connected = self.bottleneck_many(
            np.asarray([a], dtype=np.int64), np.asarray([b], dtype=np.int64)
        )
        if not connected[0]:
            return None
        value = values[0]
        if value == self._infinity:
            return math.inf
        return int(value) if np.issubdtype(self.upmin.dtype, np.integer) else float(value)

    def bottleneck_many(self, a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        a = a.astype(np.int64).copy()
        b = b.astype(np.int64).copy()
        connected = self.component[a] == self.component[b]
        res = np.full(len(a), self._infinity, dtype=self.upmin.dtype)
        levels = self.up.shape[0]
        da = self.depth[a].copy()
        db = self.depth[b].copy()
        swap = da < db
        a[swap], b[swap] = b[swap], a[swap].copy()
        da, db = np.maximum(da, db), np.minimum(da, db)
        for j in range(levels - 1, -1, -1):
            lift = connected & ((da - db) >= (1 << j))
            if lift.any():
                res[lift] = np.minimum(res[lift], self.upmin[j][a[lift]])
                a[lift] = self.up[j][a[lift]]
                da[lift] -= 1 << j
        active = connected & (a != b)
        for j in range(levels - 1, -1, -1):
            step = active & (self.up[j][a] != self.up[j][b])
            if step.any():
                res[step] = np.minimum(
                    res[step], np.minimum(self.upmin[j][a[step]], self.upmin[j][b[step]])
                )
                a[step] = self.up[j][a[step]]
                b[step] = self.up[j][b[step]]
        if active.any():
            res[active] = np.minimum(
                res[active], np.minimum(self.upmin[0][a[active]], self.upmin[0][b[active]])
            )
        return res, connected


@dataclass(frozen=True)
class WindowSet:
    """Disjoint ascending strength intervals plus a per-edge assignment."""

    intervals: list[tuple[int, int]]
    assignment: np.ndarray


def star_graph(h: Hypergraph) -> StarGraph:
    """Star expansion; the center is the smallest vertex of each edge and
    single-vertex edges contribute nothing."""
    lengths = h._edge_lengths
    fan = lengths - 1
    centers = np.repeat(h._verts[h._ptr[:-1]], fan)
    mask = np.ones(h.size, dtype=bool)
    mask[h._ptr[:-1]] = False
    others = h._verts[mask]
    return StarGraph(
        n=h.n,
        u=centers,
        v=others,
        weight=np.repeat(h.weights, fan),
        origin=np.repeat(np.arange(h.m, dtype=np.int64), fan),
    )


def max_spanning_forest(a: StarGraph) -> SpanningForest:
    """Kruskal by descending weight; ties resolved by originating edge id
    and position inside the star, so the forest is deterministic."""
    order = np.argsort(-a.weight, kind="stable")
    uf = UnionFind(a.n)
    adj_u, adj_v, adj_w = [], [], []
    for i in order:
        x, y = int(a.u[i]), int(a.v[i])
        if uf.union(x, y):
            adj_u.append(x)
            adj_v.append(y)
            adj_w.append(a.weight[i])
    # Root each tree at its smallest vertex and lay out parents by BFS.
    n = a.n
    neighbors: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for x, y, w in zip(adj_u, adj_v, adj_w):
        neighbors[x].append((y, w))
        neighbors[y].append((x, w))
    dtype = a.weight.dtype if len(a.weight) else np.dtype(np.int64)
    infinity = np.iinfo(dtype).max if np.issubdtype(dtype, np.integer) else np.inf
    parent = np.arange(n, dtype=np.int64)
    parent_weight = np.full(n, infinity, dtype=dtype)
    depth = np.zeros(n, dtype=np.int64)
    component = np.full(n, -1, dtype=np.int64)
    comp = 0
    for root in range(n):
        if component[root] >= 0:
            continue
        component[root] = comp
        queue = [root]
        while queue:
            nxt = []
            for x in queue:
                for y, w in neighbors[x]:
                    if component[y] < 0:
                        component[y] = comp
                        parent[y] = x
                        parent_weight[y] = w
                        depth[y] = depth[x] + 1
                        nxt.append(y)
            queue = nxt
        comp += 1
    levels = max(1, int(np.max(depth)).bit_length()) if n else 1
    up = np.empty((levels, n), dtype=np.int64)
    upmin = np.empty((levels, n), dtype=dtype)
    up[0] = parent
    upmin[0] = parent_weight
    for j in range(1, levels):
        up[j] = up[j - 1][up[j - 1]]
        upmin[j] = np.minimum(upmin[j - 1], upmin[j - 1][up[j - 1]])
    return SpanningForest(n, parent, parent_weight, depth, component, up, upmin)


def rough_strengths(h: Hypergraph, forest: SpanningForest | None = None) -> np.ndarray:
    """Per-edge bottleneck estimates d_e sandwiching the true strength
    within a factor of the hypergraph size p."""
    if h.m == 0:
        return np.empty(0, dtype=np.int64)
    if h.m and int(np.min(h._edge_lengths)) < 2:
        raise HypergraphError("rough strengths require edges with >= 2 vertices")
    stars = star_graph(h)
    if forest is None:
        forest = max_spanning_forest(stars)
    values, connected = forest.bottleneck_many(stars.u, stars.v)
    if not connected.all():
        raise AssertionError("an edge's own star must connect it inside the forest")
    d = np.minimum.reduceat(values, np.cumsum(np.concatenate(([0], np.diff(h._ptr)[:-1] - 1))))
    return d


def windows(d: np.ndarray, p: int) -> WindowSet:
    """Merge the intervals [d_e, p*d_e] into maximal disjoint windows and
    assign each edge to the window containing its interval."""
    if len(d) and int(np.min(d)) < 1:
        raise HypergraphError("rough strengths must be positive")
    if not len(d):
        return WindowSet([], np.empty(0, dtype=np.int64))
    values = sorted(set(int(x) for x in d.tolist()))
    intervals: list[tuple[int, int]] = []
    a = b = None
    for x in values:
        if a is None:
            a, b = x, p * x
        elif x <= b:
            b = p * x
        else:
            intervals.append((a, b))
            a, b = x, p * x
    intervals.append((a, b))
    starts = np.asarray([iv[0] for iv in intervals], dtype=np.int64)
    assignment = np.searchsorted(starts, np.asarray(d, dtype=np.int64), side="right") - 1
    return WindowSet(intervals, assignment)


def windowed_estimate(h: Hypergraph) -> StrengthMap:
    """Run the cascade per strength window, heaviest first, contracting
    finished heavier windows before descending."""
    if h.m == 0:
        empty = np.empty(0, dtype=np.int64)
        return StrengthMap(empty, empty, empty)
    d = rough_strengths(h)
    ws = windows(d, h.size)
    gamma = np.zeros(h.m, dtype=np.int64)
    level = np.zeros(h.m, dtype=np.int64)
    window = ws.assignment.copy()
    parent = np.arange(h.n, dtype=np.int64)
    for i in range(len(ws.intervals) - 1, -1, -1):
        eids = np.nonzero(ws.assignment == i)[0]
        _, labels = _first_occurrence_labels(_flatten_parents(parent))
        n_i = int(labels.max()) + 1 if len(labels) else 0
        sub, edge_map = h._take_edges(eids)[0]._relabel(labels, n_i)
        kept = eids[edge_map >= 0]
        lower = ws.intervals[i][0]
        if sub.m:
            sm = estimate_strengths_weighted(sub, lower)
            gamma[kept] = sm.gamma
            level[kept] = sm.level
        # Edges swallowed by heavier contractions cannot occur when the
        # windows are genuinely disjoint; d_e is still a valid lower bound.
        collapsed = eids[edge_map < 0]
        gamma[collapsed] = d[collapsed]
        level[collapsed] = 0
        if i > 0:
            _union_edges_core(parent, h._ptr, h._verts, eids)
    return StrengthMap(gamma, level, window)


def approximate_strengths(h: Hypergraph) -> StrengthMap:
    """Pipeline entry point: unit weights use the plain cascade, anything
    else goes through windowing."""
    from .strength import estimate_strengths

    if h.is_unit_weighted:
        sm = estimate_strengths(h, 1)
        return StrengthMap(sm.gamma, sm.level, np.zeros(h.m, dtype=np.int64))
    return windowed_estimate(h)
