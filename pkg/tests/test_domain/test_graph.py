"""Tests for the graph core."""
import networkx as nx
import pytest
from hypothesis import given

from app.domain.graph import (
    CrossingStatus,
    Graph,
    build_graph,
    complement,
    crossing_status,
    degree_into,
    induced,
    mask_of,
    max_degree_of,
    members,
)
from app.infrastructure.exceptions import (
    InvalidInputException,
    PreconditionViolationException,
)
from tests.strategies import graphs


def test_build_graph_deduplicates_edges():
    """Repeated and reversed pairs collapse to one edge."""
    g = build_graph(3, [(0, 1), (1, 0), (0, 1), (1, 2)])

    assert g.edge_count == 2
    assert g.edges() == [(0, 1), (1, 2)]
    assert g.neighbors(1) == frozenset({0, 2})


def test_build_graph_rejects_self_loop():
    with pytest.raises(InvalidInputException):
        build_graph(3, [(1, 1)])


def test_build_graph_rejects_out_of_range_vertex():
    with pytest.raises(InvalidInputException):
        build_graph(3, [(0, 3)])


def test_graph_rejects_asymmetric_matrix():
    with pytest.raises(InvalidInputException):
        Graph([[False, True], [False, False]])


def test_mask_round_trip():
    assert members(mask_of([5, 0, 3])) == [0, 3, 5]
    assert members(0) == []


def test_crossing_status_of_k33_sides(k33):
    assert crossing_status(k33, {0, 1, 2}, {3, 4, 5}) is CrossingStatus.COMPLETE
    assert crossing_status(k33, {0}, {1, 2}) is CrossingStatus.EMPTY
    assert crossing_status(k33, {0, 3}, {1, 4}) is CrossingStatus.MIXED


def test_crossing_status_requires_disjoint_sets(k33):
    with pytest.raises(PreconditionViolationException):
        crossing_status(k33, {0, 1}, {1, 3})
    with pytest.raises(PreconditionViolationException):
        crossing_status(k33, set(), {1})


def test_degree_helpers(path_9):
    assert degree_into(path_9, 4, {3, 5, 6}) == 2
    assert max_degree_of(path_9, {0, 1, 2}) == 2
    assert max_degree_of(path_9, {0, 2, 4}) == 0
    assert max_degree_of(path_9, []) == 0


def test_induced_keeps_mapping(path_9):
    sub, mapping = induced(path_9, {7, 2, 3})

    assert mapping == (2, 3, 7)
    assert sub.edges() == [(0, 1)]


@given(graphs())
def test_complement_is_an_involution(g):
    pairs = g.n * (g.n - 1) // 2

    assert complement(complement(g)) == g
    assert g.edge_count + complement(g).edge_count == pairs


@given(graphs())
def test_bitset_rows_match_matrix(g):
    for v in range(g.n):
        assert frozenset(members(g.rows[v])) == g.neighbors(v)
        assert g.degree(v) == len(g.neighbors(v))


@given(graphs())
def test_networkx_round_trip(g):
    as_nx = g.to_networkx()

    assert as_nx.number_of_nodes() == g.n
    assert Graph.from_networkx(as_nx) == g
    assert nx.is_isomorphic(as_nx, Graph.from_networkx(as_nx).to_networkx())
