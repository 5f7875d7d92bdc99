import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperstrength import (
    Hypergraph,
    HypergraphError,
    InvalidCutError,
    ParseError,
    normalize,
    parse,
    serialize,
)
from conftest import random_hypergraph

K4_TEXT = "4 6 0\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n"


def test_parse_header_and_counts():
    h = parse(K4_TEXT)
    assert (h.n, h.m, h.size, h.rank) == (4, 6, 12, 2)
    assert h.total_weight == 6
    assert h.is_unit_weighted


def test_parse_weighted_flag():
    h = parse("3 2 1\n5 1 2\n2 2 3\n")
    assert h.weight(0) == 5 and h.weight(1) == 2
    assert h.total_weight == 7


def test_parse_comments_and_blank_lines():
    text = "# comment\n\n3 1 0\n\n# another\n1 2 3\n"
    h = parse(text)
    assert h.m == 1 and h.edge(0) == (0, 1, 2)


def test_parse_singleton_edges_dropped():
    h = parse("3 2 0\n2\n1 3\n")
    assert h.m == 1 and h.edge(0) == (0, 2)


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("", "missing header"),
        ("3 2\n", "header"),
        ("3 1 0\n1 4\n", "out of range"),
        ("3 1 0\n1 1\n", "duplicate"),
        ("3 2 0\n1 2\n", "expected 2 edge lines"),
        ("3 1 0\n1 2\n2 3\n", "more than 1"),
        ("3 1 1\n0 1 2\n", "non-positive weight"),
        ("3 1 0\na b\n", "integers"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert fragment in str(exc.value)


def test_parse_error_reports_line_number():
    with pytest.raises(ParseError, match="line 3"):
        parse("3 2 0\n1 2\n1 9\n")


def test_serialize_round_trip_unit():
    assert normalize(K4_TEXT) == K4_TEXT


def test_serialize_force_weighted():
    h = parse("2 1 0\n1 2\n")
    assert serialize(h, force_weighted=True) == "2 1 1\n1 1 2\n"


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(2, 9), st.integers(0, 10), st.booleans())
def test_round_trip_random(seed, n, m, weighted):
    rng = random.Random(seed)
    h, _ = random_hypergraph(rng, n, m, rank=4, wmax=9 if weighted else 1)
    text = serialize(h)
    again = parse(text)
    assert serialize(again) == text
    assert again == h


def test_cut_edges_and_weight(fix_bowtie):
    assert fix_bowtie.cut_edges([0, 1, 2]) == {6}
    assert fix_bowtie.cut_weight([0, 1, 2]) == 1
    assert fix_bowtie.cut_weight([0]) == 2


def test_cut_side_validation(fix_k4):
    with pytest.raises(InvalidCutError):
        fix_k4.cut_edges([])
    with pytest.raises(InvalidCutError):
        fix_k4.cut_edges([0, 1, 2, 3])
    with pytest.raises(HypergraphError):
        fix_k4.cut_edges([7])


def test_induced(fix_bowtie):
    sub, edge_ids, vertices = fix_bowtie.induced([0, 1, 2])
    assert sub.n == 3 and sub.m == 3
    assert list(edge_ids) == [0, 1, 2]
    assert list(vertices) == [0, 1, 2]


def test_delete_edges(fix_bowtie):
    rest, kept = fix_bowtie.delete_edges([6])
    assert rest.m == 6
    kappa, _ = rest.components()
    assert kappa == 2
    assert 6 not in kept


def test_contract_edges(fix_bowtie):
    new, cmap = fix_bowtie.contract_edges([6])
    assert new.n == 5
    assert cmap.image(2) == cmap.image(3)
    assert not cmap.kept(6)
    assert new.m == 6


def test_contract_merges_parallel_copies():
    h = Hypergraph(4, [((0, 1), 1), ((2, 3), 1), ((0, 2), 1), ((1, 3), 1)])
    new, cmap = h.contract_edges([0, 1])
    # Both crossing edges survive as parallel copies between the two blobs.
    assert new.n == 2 and new.m == 2
    assert new.edge(0) == new.edge(1) == (0, 1)


def test_components(fix_bowtie):
    rest, _ = fix_bowtie.delete_edges([6])
    kappa, labels = rest.components()
    assert kappa == 2
    assert list(labels) == [0, 0, 0, 1, 1, 1]


def test_components_order_by_smallest_vertex():
    h = Hypergraph(4, [((2, 3), 1)])
    kappa, labels = h.components()
    assert kappa == 3
    assert list(labels) == [0, 1, 2, 2]


def test_total_weight_guard():
    with pytest.raises(HypergraphError, match="2\\^62"):
        Hypergraph(2, [((0, 1), 2**62), ((0, 1), 1)])


def test_weight_validation():
    with pytest.raises(HypergraphError):
        Hypergraph(2, [((0, 1), 0)])
    with pytest.raises(HypergraphError):
        Hypergraph(2, [((0, 1, 1), 1)])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_contraction_keeps_edge_identity(seed):
    """Edge maps survive chained minors: mapped edges keep their weight."""
    rng = random.Random(seed)
    h, _ = random_hypergraph(rng, rng.randint(3, 8), rng.randint(1, 10), 4, 5)
    merge = [e for e in range(h.m) if rng.random() < 0.4]
    new, cmap = h.contract_edges(merge)
    for old in range(h.m):
        if cmap.kept(old):
            assert new.weight(int(cmap.edge_map[old])) == h.weight(old)
