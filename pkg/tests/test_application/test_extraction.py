"""Tests for block extraction on comparability and incomparability graphs."""
import pytest
from hypothesis import given, settings

from app.application import extraction
from app.application.certificates import validate_certificate
from app.application.extraction import (
    exponent_constants,
    extract_blocks_comparability,
    extract_blocks_incomparability,
    extraction_exponent,
)
from app.core.config import AlgoConfig
from app.domain.entities import CertificateKind
from app.domain.poset import (
    comparability_graph,
    incomparability_graph,
    poset_from_relations,
)
from app.infrastructure.exceptions import (
    CaseOneShortfallException,
    PreconditionViolationException,
    WitnessMismatchException,
)
from tests.strategies import dimension_two_posets

DEFAULT_CONFIG = AlgoConfig()


def test_exponent_constants():
    constants = exponent_constants(1.0, 1 / 500, 1 / 100)

    assert constants.alpha1 == pytest.approx(0.25)
    assert constants.beta == pytest.approx(0.25**2 / 500 / 24)
    assert constants.c == min(constants.main_branch, constants.split_branch)
    assert 0 < constants.c < 0.1


def test_smaller_epsilon_gives_smaller_exponent():
    default = extraction_exponent(0.5, AlgoConfig())
    safe = extraction_exponent(0.5, AlgoConfig().with_safe_epsilon())

    assert safe < default


def test_antichain_comparability_blocks(antichain_10, algo_config):
    cert = extract_blocks_comparability(antichain_10, 0.5, algo_config)

    assert cert.kind is CertificateKind.EMPTY
    assert cert.t >= 2
    assert validate_certificate(comparability_graph(antichain_10), cert).passed


def test_complete_graph_with_antichain_witness():
    """K100 is the incomparability graph of a 100-element antichain."""
    antichain = poset_from_relations(100, [])
    g = incomparability_graph(antichain)

    cert = extract_blocks_incomparability(g, antichain, 0.5, DEFAULT_CONFIG)

    assert cert.kind is CertificateKind.COMPLETE
    assert cert.exponent == pytest.approx(extraction_exponent(0.5, DEFAULT_CONFIG))
    assert validate_certificate(g, cert).passed


def test_chain_violates_density_precondition(chain_10, algo_config):
    with pytest.raises(PreconditionViolationException):
        extract_blocks_incomparability(
            incomparability_graph(chain_10), chain_10, 0.5, algo_config
        )
    with pytest.raises(PreconditionViolationException):
        extract_blocks_comparability(chain_10, 0.5, algo_config)


def test_witness_must_match(chain_10, antichain_10, algo_config):
    with pytest.raises(WitnessMismatchException):
        extract_blocks_incomparability(
            incomparability_graph(antichain_10), chain_10, 0.5, algo_config
        )


@pytest.mark.parametrize("alpha", [0, 1.2])
def test_alpha_range(antichain_10, algo_config, alpha):
    with pytest.raises(PreconditionViolationException):
        extract_blocks_comparability(antichain_10, alpha, algo_config)


@settings(max_examples=30, deadline=None)
@given(dimension_two_posets(min_n=2, max_n=40))
def test_incomparability_certificates_validate(p):
    g = incomparability_graph(p)
    pairs = p.n * (p.n - 1) // 2
    if g.edge_count == 0:
        return
    alpha = min(1.0, 0.999 * g.edge_count / pairs)

    cert = extract_blocks_incomparability(g, p, alpha, DEFAULT_CONFIG)

    assert cert.kind is CertificateKind.COMPLETE
    assert validate_certificate(g, cert).passed


def test_case_one_shortfall_restarts_with_safe_epsilon(monkeypatch, antichain_10):
    real_extract = extraction._extract
    epsilons = []

    def short_once(p, g, alpha, config):
        epsilons.append(config.epsilon)
        if len(epsilons) == 1:
            raise CaseOneShortfallException("Case 1 grouped into t=1 < 2 blocks")
        return real_extract(p, g, alpha, config)

    monkeypatch.setattr(extraction, "_extract", short_once)

    cert = extract_blocks_comparability(antichain_10, 0.5, DEFAULT_CONFIG)

    assert epsilons == [DEFAULT_CONFIG.epsilon, DEFAULT_CONFIG.epsilon_safe]
    assert validate_certificate(comparability_graph(antichain_10), cert).passed
    assert cert.exponent == pytest.approx(
        extraction_exponent(0.5, DEFAULT_CONFIG.with_safe_epsilon())
    )
