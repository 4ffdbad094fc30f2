"""Tests for the main block-extraction procedure."""
import math
from fractions import Fraction

import numpy as np
import pytest

from app.application.certificates import validate_certificate
from app.application.main_algorithm import (
    MainAlgoState,
    bucket_bound,
    bucket_limit,
    check_properties,
    eq1_holds,
    eq1_sum,
    good_probability,
    good_probability_lower_bound,
    group_cells,
    certified_exponent,
    main_algorithm,
    run_main_algorithm,
    sample_good_vertices,
)
from app.core.config import AlgoConfig
from app.domain.entities import CertificateKind
from app.domain.graph import build_graph, mask_of
from app.domain.poset import (
    comparability_graph,
    linear_extension,
    poset_from_relations,
)
from app.infrastructure.exceptions import (
    AlgorithmInvariantException,
    PreconditionViolationException,
    RetryCapExhaustedException,
)


def _matching_poset(m: int):
    """``i < m + i`` for every i: each element of B has one neighbour in A."""
    return poset_from_relations(2 * m, [(i, m + i) for i in range(m)])


def test_bucket_limit():
    assert bucket_limit(1000, 1 / 500) == 2
    assert bucket_limit(100, 1 / 500) == 0
    assert bucket_limit(8, 0.5) == 3


def test_bucket_bound():
    assert bucket_bound(4, 2) == pytest.approx(4.0)
    assert bucket_bound(9, 0) == pytest.approx(3.0)


@pytest.mark.parametrize("n", [10**3, 10**4, 10**5, 10**6])
@pytest.mark.parametrize("epsilon", [1 / 500, 1 / 5184])
def test_eq1_holds_at_default_constants(n, epsilon):
    assert eq1_holds(n, epsilon)


def test_eq1_margin_grows_with_safe_epsilon():
    n = 10**6

    assert n / 4 - eq1_sum(n, 1 / 5184) > n / 4 - eq1_sum(n, 1 / 500)


def test_eq1_fails_for_large_epsilon():
    assert not eq1_holds(8, 0.5)


def test_good_probability_closed_form():
    assert good_probability_lower_bound(1) == Fraction(1, 8)
    assert good_probability_lower_bound(2) == Fraction(81, 512)


@pytest.mark.parametrize("k", range(3, 9))
def test_good_probability_reaches_one_sixth(k):
    assert good_probability_lower_bound(k) >= Fraction(1, 6)


@pytest.mark.parametrize("k", range(1, 7))
def test_good_probability_dominates_bound(k):
    bound = good_probability_lower_bound(k)

    for d in range(2 ** (k - 1), 2**k):
        assert good_probability(d, k) >= bound


def test_certified_exponent():
    expected = math.log(2) / (2 * math.log(200))

    assert certified_exponent(0.01, 1.0) == pytest.approx(expected)


def test_group_cells_closes_at_threshold():
    cells = {0: [1, 2, 3], 5: [4], 7: [6, 8]}

    assert group_cells(cells, 3) == [frozenset({1, 2, 3}), frozenset({4, 6, 8})]


def test_group_cells_trailing_group_joins_last():
    cells = {0: [1, 2, 3], 5: [4], 7: [6, 8]}

    assert group_cells(cells, 4) == [frozenset({1, 2, 3, 4, 6, 8})]


def test_sample_good_vertices_at_rate_one():
    g = build_graph(3, [(0, 1), (1, 2)])
    rng = np.random.default_rng(0)

    selected, good = sample_good_vertices(g, [0, 1], [0, 1, 2], 0, rng)

    assert selected == mask_of([0, 1, 2])
    assert good == [0]


def test_small_m_ends_exhausted(antichain_10, algo_config):
    """With epsilon*m < 1 there are no buckets and A, B are the blocks."""
    le = linear_extension(antichain_10)

    result = run_main_algorithm(antichain_10, range(5), range(5, 10), le, algo_config)

    assert result.branch == "exhausted"
    blocks = set(result.certificate.blocks)
    assert blocks == {frozenset(range(5)), frozenset(range(5, 10))}
    expected = certified_exponent(0.01, 0.5)
    assert result.certificate.exponent == pytest.approx(expected)
    assert [s.event for s in result.trace] == ["start"]


def test_no_bucket_stop():
    p = poset_from_relations(16, [])
    config = AlgoConfig(epsilon=0.5, check_invariants=False)

    result = run_main_algorithm(p, range(8), range(8, 16), linear_extension(p), config)

    assert result.branch == "no-bucket"
    assert result.certificate.blocks == (frozenset(range(8, 16)), frozenset(range(8)))


def test_case_one_emits_anticomplete_blocks():
    """Every element of B sits in bucket 1, so the sub-procedure samples A."""
    m = 40
    p = _matching_poset(m)
    config = AlgoConfig(epsilon=0.1, seed=3, check_invariants=False)

    le = linear_extension(p)

    result = run_main_algorithm(p, range(m), range(m, 2 * m), le, config)
    cert = result.certificate

    assert result.branch == "case-one"
    assert cert.kind is CertificateKind.EMPTY
    assert cert.t >= 2
    assert all(block <= frozenset(range(m, 2 * m)) for block in cert.blocks)
    assert validate_certificate(comparability_graph(p), cert).passed
    assert any(s.event == "case-one-1" for s in result.trace)


def test_main_algorithm_returns_certificate(antichain_10, algo_config):
    le = linear_extension(antichain_10)

    cert = main_algorithm(antichain_10, [0, 1], [8, 9], le, algo_config)

    assert cert.t == 2
    assert validate_certificate(comparability_graph(antichain_10), cert).passed


@pytest.mark.parametrize(
    "a, b",
    [([0, 1], [5]), ([], []), ([0, 1], [1, 2]), ([5, 6], [0, 1])],
)
def test_preconditions(antichain_10, algo_config, a, b):
    le = linear_extension(antichain_10)

    with pytest.raises(PreconditionViolationException):
        run_main_algorithm(antichain_10, a, b, le, algo_config)


def test_crossing_degree_precondition(chain_10, algo_config):
    le = linear_extension(chain_10)

    with pytest.raises(PreconditionViolationException):
        run_main_algorithm(chain_10, [0], [1], le, algo_config)


def test_check_properties_detects_lost_vertices():
    g = build_graph(4, [])
    state = MainAlgoState(m=2, j0=0, a=mask_of([0]), b=mask_of([2, 3]))

    with pytest.raises(AlgorithmInvariantException):
        check_properties(state, g)


def test_check_properties_detects_degree_bound():
    g = build_graph(4, [(0, 2), (1, 2)])
    state = MainAlgoState(m=2, j0=0, a=mask_of([0, 1]), b=mask_of([2, 3]), j=1)

    with pytest.raises(AlgorithmInvariantException):
        check_properties(state, g)


def _bipartite_poset(m: int, neighbours: dict[int, list[int]]):
    """``a < m + j`` for every ``a`` in ``neighbours[j]``; A is ``0..m-1``."""
    pairs = [(a, m + j) for j, lower in neighbours.items() for a in lower]
    return poset_from_relations(2 * m, pairs)


def _run_checked(p, m: int, **config):
    config = AlgoConfig(check_invariants=True, **config)
    return run_main_algorithm(p, range(m), range(m, 2 * m), linear_extension(p), config)


@pytest.mark.parametrize("seed", range(5))
def test_top_bucket_goes_to_case_one_with_invariants_checked(seed):
    """B-vertex j sees A-vertices j, j+1, ... (mod m); a quarter have degree 4."""
    m = 2000
    degrees = np.random.default_rng(seed).integers(1, 5, size=m)
    neighbours = {
        j: [(j + s) % m for s in range(int(d))] for j, d in enumerate(degrees)
    }
    p = _bipartite_poset(m, neighbours)

    result = _run_checked(p, m, epsilon=1 / 500, seed=seed)

    assert result.branch == "case-one"
    assert [s.event for s in result.trace] == ["start", "dump-above-3", "case-one-3"]
    assert result.certificate.t >= 2
    assert validate_certificate(comparability_graph(p), result.certificate).passed


def test_small_buckets_are_dumped_level_by_level():
    """50 vertices of degree 4, 100 of degree 2 and 100 of degree 1.

    Bucket 3 stays under t_3 and is dumped above; buckets 2 and 1 are active
    but smaller than 2 t_k, so each working set is dumped and J drops.
    """
    m = 2000
    neighbours = {j: [4 * j + s for s in range(4)] for j in range(50)}
    neighbours.update({j: [100 + 2 * j, 101 + 2 * j] for j in range(50, 150)})
    neighbours.update({j: [400 + j - 150] for j in range(150, 250)})
    p = _bipartite_poset(m, neighbours)

    result = _run_checked(p, m, epsilon=1 / 500)

    assert result.branch == "exhausted"
    assert [s.event for s in result.trace] == [
        "start",
        "dump-above-2",
        "dump-working-set-2",
        "dump-above-1",
        "dump-working-set-1",
    ]
    assert [s.size_b_out for s in result.trace] == [0, 50, 150, 150, 250]
    assert result.certificate.blocks == (
        frozenset(range(m)),
        frozenset(range(m + 250, 2 * m)),
    )
    assert validate_certificate(comparability_graph(p), result.certificate).passed


def test_heavy_removal_forces_case_two():
    """128 degree-1 vertices in bucket 1, 70 of them hanging off seven A-hubs.

    The hubs have 10 >= |W|^2/m neighbours in W, so they are removed, the 70
    vertices lose their only neighbour and fewer than half of W stay strong.
    The shrunken working set is then dumped.
    """
    m = 2000
    neighbours = {j: [j // 10] for j in range(70)}
    neighbours.update({j: [100 + j] for j in range(70, 128)})
    p = _bipartite_poset(m, neighbours)

    result = _run_checked(p, m, epsilon=0.006)

    assert result.branch == "exhausted"
    events = [s.event for s in result.trace]
    assert events == ["start", "dump-above-1", "case-two-1", "dump-working-set-1"]
    case_two = result.trace[2]
    assert (case_two.size_a_out, case_two.size_w) == (7, 128)
    assert result.trace[3].size_b_out == 58
    a_block, b_block = result.certificate.blocks
    assert a_block == frozenset(range(7, m))
    assert len(b_block) == m - 58
    assert validate_certificate(comparability_graph(p), result.certificate).passed


def test_case_one_sampling_gives_up_at_the_retry_cap(monkeypatch):
    monkeypatch.setattr(
        "app.application.main_algorithm.sample_good_vertices",
        lambda *args: (0, []),
    )
    m = 40
    p = _matching_poset(m)
    config = AlgoConfig(epsilon=0.1, seed=3, retry_cap=5, check_invariants=False)

    with pytest.raises(RetryCapExhaustedException) as exc:
        run_main_algorithm(p, range(m), range(m, 2 * m), linear_extension(p), config)

    assert "after 5 attempts" in str(exc.value)
    assert exc.value.exit_code == 4
