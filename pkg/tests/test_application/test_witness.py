"""Tests for witness reconstruction and dimension-two realizers."""
import numpy as np
import pytest
from hypothesis import given, settings

from app.application.witness import (
    dimension_two_realizer,
    poset_to_segments,
    reconstruct_incomparability_witness,
    transitive_orientation,
)
from app.domain.geometry import intersection_graph
from app.domain.poset import (
    comparability_graph,
    incomparability_graph,
    poset_from_linear_orders,
    poset_from_relations,
    witness_matches,
)
from app.infrastructure.exceptions import PreconditionViolationException
from tests.strategies import dimension_two_posets, posets


def _standard_example():
    """a_i < b_j for i != j on three pairs: a poset of dimension three."""
    pairs = [(i, 3 + j) for i in range(3) for j in range(3) if i != j]
    return poset_from_relations(6, pairs)


def test_odd_cycle_has_no_orientation(cycle_5):
    assert transitive_orientation(cycle_5) is None


def test_path_is_oriented(path_9):
    p = transitive_orientation(path_9)

    assert p is not None
    assert comparability_graph(p) == path_9


def test_c5_is_not_an_incomparability_graph(cycle_5):
    with pytest.raises(PreconditionViolationException):
        reconstruct_incomparability_witness(cycle_5)


def test_dimension_three_poset_has_no_realizer():
    with pytest.raises(PreconditionViolationException):
        dimension_two_realizer(_standard_example())


@settings(max_examples=60)
@given(posets(max_dim=3))
def test_comparability_graphs_are_oriented(p):
    oriented = transitive_orientation(comparability_graph(p))

    assert oriented is not None
    assert comparability_graph(oriented) == comparability_graph(p)


@settings(max_examples=60)
@given(posets(max_dim=3))
def test_reconstructed_witness_matches(p):
    g = incomparability_graph(p)

    assert witness_matches(g, reconstruct_incomparability_witness(g))


@settings(max_examples=60)
@given(dimension_two_posets())
def test_realizer_intersects_to_the_poset(p):
    first, second = dimension_two_realizer(p)
    orders = [np.argsort(first), np.argsort(second)]

    assert poset_from_linear_orders(orders) == p


@settings(max_examples=40)
@given(dimension_two_posets())
def test_segments_realize_the_poset(p):
    curves, witness = poset_to_segments(p)

    assert witness == p
    assert intersection_graph(curves) == incomparability_graph(p)
