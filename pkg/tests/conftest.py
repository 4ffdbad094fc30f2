"""Pytest configuration and fixtures."""
import pytest

from app.core.config import AlgoConfig, PipelineConfig
from app.domain.graph import Graph, build_graph
from app.domain.poset import Poset, poset_from_relations


@pytest.fixture
def algo_config() -> AlgoConfig:
    """Default extraction constants with invariant checks on."""
    return AlgoConfig(seed=0, check_invariants=True)


@pytest.fixture
def pipeline_config(algo_config) -> PipelineConfig:
    return PipelineConfig(algo=algo_config)


@pytest.fixture
def chain_10() -> Poset:
    return poset_from_relations(10, [(i, i + 1) for i in range(9)])


@pytest.fixture
def antichain_10() -> Poset:
    return poset_from_relations(10, [])


@pytest.fixture
def path_9() -> Graph:
    return build_graph(9, [(i, i + 1) for i in range(8)])


@pytest.fixture
def cycle_5() -> Graph:
    return build_graph(5, [(i, (i + 1) % 5) for i in range(5)])


@pytest.fixture
def k33() -> Graph:
    return build_graph(6, [(u, v) for u in range(3) for v in range(3, 6)])
