"""Acceptance-scale loops; run with ``pytest -m slow``."""
import time
from itertools import combinations, permutations

import networkx as nx
import pytest

from app.application.certificates import validate_certificate
from app.application.cograph import qeh_recursion
from app.application.extraction import (
    extract_blocks_comparability,
    extract_blocks_incomparability,
)
from app.application.main_algorithm import sample_good_vertices
from app.application.ramsey import brute_force_ramsey, is_clique, is_independent
from app.application.separators import (
    component_masks,
    exact_separator,
    split_from_separator,
)
from app.application.use_cases.string_eh import StringEHUseCase
from app.application.use_cases.string_quasi_eh import StringGraphOracle
from app.core.config import AlgoConfig, PipelineConfig
from app.core.seeding import derive_rng
from app.domain.geometry import intersection_graph, permutation_to_segments
from app.domain.graph import (
    CrossingStatus,
    Graph,
    build_graph,
    crossing_status,
    mask_of,
)
from app.domain.poset import (
    comparability_graph,
    incomparability_graph,
    poset_from_permutation,
    random_poset_dimension_k,
)
from app.infrastructure.exceptions import SeparatorSplitException

pytestmark = pytest.mark.slow

CONFIG = PipelineConfig(algo=AlgoConfig(seed=2024))
INSTANCE_SECONDS = 10.0


def _timed(call, *args):
    started = time.perf_counter()
    result = call(*args)
    return result, time.perf_counter() - started


@pytest.mark.parametrize("seed", range(25))
@pytest.mark.parametrize("dim", [2, 3])
@pytest.mark.parametrize("n", [100, 300, 1000, 3000])
def test_certificates_on_random_posets(n, dim, seed):
    p = random_poset_dimension_k(n, dim, seed)
    incomparable = incomparability_graph(p)
    alpha = 0.999 * incomparable.edge_count / (n * (n - 1) // 2)
    algo = CONFIG.algo.model_copy(update={"seed": seed})

    cert, elapsed = _timed(extract_blocks_incomparability, incomparable, p, alpha, algo)
    assert validate_certificate(incomparable, cert).passed
    assert elapsed <= INSTANCE_SECONDS

    cert, elapsed = _timed(extract_blocks_comparability, p, alpha, algo)
    assert validate_certificate(comparability_graph(p), cert).passed
    assert elapsed <= INSTANCE_SECONDS


@pytest.mark.parametrize("k", range(1, 11))
def test_sampling_rate_finds_good_vertices(k):
    d = 2**k - 1
    star = build_graph(d + 1, [(0, leaf) for leaf in range(1, d + 1)])
    rng = derive_rng(0, "sampling", k)
    trials = 10**4
    hits = sum(
        bool(sample_good_vertices(star, [0], range(1, d + 1), k, rng)[1])
        for _ in range(trials)
    )

    assert hits / trials >= 1 / 6 - 0.01


def test_segments_match_for_every_small_permutation():
    for n in range(1, 8):
        for pi in permutations(range(n)):
            curves, witness = permutation_to_segments(pi)
            assert intersection_graph(curves) == incomparability_graph(witness)


def test_segments_match_for_random_permutations():
    rng = derive_rng(0, "segments")
    for _ in range(1000):
        pi = rng.permutation(int(rng.integers(1, 201)))
        curves, witness = permutation_to_segments(pi)
        assert intersection_graph(curves) == incomparability_graph(witness)


def _connected_graphs(count: int):
    rng = derive_rng(0, "separator-graphs")
    found = 0
    while found < count:
        n = int(rng.integers(2, 10))
        p = float(rng.uniform(0.2, 0.8))
        g = nx.gnp_random_graph(n, p, seed=int(rng.integers(2**31)))
        if nx.is_connected(g):
            found += 1
            yield Graph.from_networkx(g)


def _check_separator_contract(g: Graph) -> None:
    """Minimum balanced separator, then a split whenever the remainder allows one.

    Packing gives each side a third of the remainder whenever no component
    holds more than two thirds of it. A single leftover clique cannot be split.
    """
    result = exact_separator(g)
    size = len(result.separator)
    limit = 2 * g.n / 3

    assert all(len(c) <= limit for c in result.components)
    for chosen in combinations(range(g.n), size - 1) if size else ():
        alive = g.full_mask & ~mask_of(chosen)
        assert max(c.bit_count() for c in component_masks(g, alive)) > limit
    remaining = g.n - size
    if remaining < 2 or 3 * max(map(len, result.components)) > 2 * remaining:
        with pytest.raises(SeparatorSplitException):
            split_from_separator(g, result)
        return
    x1, x2 = split_from_separator(g, result)
    assert crossing_status(g, x1, x2) is CrossingStatus.EMPTY
    assert len(x1) == len(x2)
    assert 3 * len(x1) >= remaining


def test_exact_separator_on_every_connected_graph_up_to_seven():
    atlas = [g for g in nx.graph_atlas_g() if len(g) >= 2 and nx.is_connected(g)]

    for g in atlas:
        _check_separator_contract(Graph.from_networkx(g))
    assert len(atlas) == 995


def test_exact_separator_on_random_connected_graphs():
    for g in _connected_graphs(10**4):
        _check_separator_contract(g)


def test_homogeneous_sets_on_random_permutations():
    rng = derive_rng(0, "string-eh")
    use_case = StringEHUseCase(CONFIG)
    oracle = StringGraphOracle(CONFIG)
    for _ in range(500):
        p = poset_from_permutation(rng.permutation(int(rng.integers(2, 21))))
        g = incomparability_graph(p)
        result = use_case.execute(g, p)
        exact = brute_force_ramsey(g)

        assert is_clique(g, result.clique) and is_independent(g, result.independent)
        assert len(result.best) <= len(exact.best)
        assert len(result.best) >= g.n ** (use_case.exponent / 2) - 1e-9

        tree = qeh_recursion(g, oracle, oracle.exponent, witness=p)
        steps = zip(tree.potentials, tree.potentials[1:])
        assert all(after >= before * (1 - 1e-12) for before, after in steps)
        assert tree.leaf_count() >= g.n**oracle.exponent * (1 - 1e-12)
