import random

import pytest

from hyperstrength import Hypergraph


@pytest.fixture
def fix_k4() -> Hypergraph:
    """Complete graph on 4 vertices, unit weights, edges as pairs."""
    return Hypergraph(4, [((a, b), 1) for a in range(4) for b in range(a + 1, 4)])


@pytest.fixture
def fix_bowtie() -> Hypergraph:
    """Two unit triangles {1,2,3} and {4,5,6} joined by the bridge {3,4}."""
    return make_bowtie()


def make_bowtie(w_tri: int = 1, w_bridge: int = 1) -> Hypergraph:
    edges = [
        ((0, 1), w_tri), ((1, 2), w_tri), ((0, 2), w_tri),
        ((3, 4), w_tri), ((4, 5), w_tri), ((3, 5), w_tri),
        ((2, 3), w_bridge),
    ]
    return Hypergraph(6, edges)


def make_star(n: int) -> Hypergraph:
    """The edge {1,2} plus {1,2,i} for every other vertex i."""
    return Hypergraph(n, [((0, 1), 1)] + [((0, 1, i), 1) for i in range(2, n)])


def random_hypergraph(rng: random.Random, n: int, m: int, rank: int, wmax: int = 1):
    """Seeded generator returning a hypergraph and its raw edge list."""
    raw = []
    for _ in range(m):
        size = rng.randint(2, min(rank, n))
        raw.append((tuple(sorted(rng.sample(range(n), size))), rng.randint(1, wmax)))
    return Hypergraph(n, raw), raw
