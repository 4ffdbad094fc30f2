"""Block certificates for comparability and incomparability graphs of posets."""

import math
from dataclasses import dataclass

from app.application.certificates import require_valid
from app.application.main_algorithm import run_main_algorithm
from app.application.peeling import peeling_fraction
from app.application.sparse_split import sparse_beta, sparse_or_split
from app.core.config import AlgoConfig
from app.core.logger import logger
from app.domain.entities import BlockCertificate, CertificateKind, SplitCase
from app.domain.graph import Graph
from app.domain.poset import (
    Poset,
    comparability_graph,
    incomparability_graph,
    linear_extension,
)
from app.infrastructure.exceptions import (
    CaseOneShortfallException,
    PreconditionViolationException,
    WitnessMismatchException,
)


@dataclass(frozen=True)
class ExponentConstants:
    alpha1: float
    beta: float
    main_branch: float
    split_branch: float

    @property
    def c(self) -> float:
        return min(self.main_branch, self.split_branch)


def exponent_constants(alpha: float, epsilon: float, delta: float) -> ExponentConstants:
    """Exponent valid for both outcomes of ``sparse_or_split``.

    A main-algorithm run on ``m >= beta n`` elements certifies
    ``ln 2 / (2 ln(2 / (delta sqrt(beta))))``; a two-block split with sides of
    at least ``beta n`` certifies ``ln 2 / ln(1 / beta)``.
    """
    beta = sparse_beta(alpha, epsilon)
    return ExponentConstants(
        alpha1=peeling_fraction(alpha),
        beta=beta,
        main_branch=math.log(2) / (2 * math.log(2 / (delta * math.sqrt(beta)))),
        split_branch=math.log(2) / math.log(1 / beta),
    )


def extraction_exponent(alpha: float, config: AlgoConfig) -> float:
    return exponent_constants(alpha, config.epsilon, config.delta).c


def _check_alpha(alpha: float) -> None:
    if not 0 < alpha <= 1:
        raise PreconditionViolationException(f"alpha must be in (0, 1], got {alpha}")


def _extract(p: Poset, g: Graph, alpha: float, config: AlgoConfig) -> BlockCertificate:
    le = linear_extension(p)
    c = extraction_exponent(alpha, config)
    case = sparse_or_split(p, le, alpha, config.epsilon, config, graph=g)
    if isinstance(case, SplitCase):
        logger.info(f"extract: split branch with sides {len(case.x1)}, {len(case.x2)}")
        return BlockCertificate(CertificateKind.EMPTY, (case.x1, case.x2), c, p.n)
    result = run_main_algorithm(p, sorted(case.a), sorted(case.b), le, config, graph=g)
    logger.info(f"extract: main algorithm ended in {result.branch}")
    return result.certificate.with_exponent(c)


def extract_blocks_comparability(
    p: Poset, alpha: float, config: AlgoConfig
) -> BlockCertificate:
    """Pairwise anticomplete blocks in the comparability graph of ``p``.

    If the first attempt's Case-1 grouping falls short, the whole extraction
    is repeated with ``epsilon_safe``.
    """
    _check_alpha(alpha)
    if p.n < 2:
        raise PreconditionViolationException(f"Extraction needs n >= 2, got {p.n}")
    g = comparability_graph(p)
    pairs = p.n * (p.n - 1) // 2
    if g.edge_count > (1 - alpha) * pairs:
        raise PreconditionViolationException(
            f"Comparability graph has {g.edge_count} edges, more than "
            f"(1 - {alpha}) * {pairs}"
        )
    try:
        cert = _extract(p, g, alpha, config)
    except CaseOneShortfallException as e:
        logger.warning(f"{e}; restarting with epsilon={config.epsilon_safe}")
        cert = _extract(p, g, alpha, config.with_safe_epsilon())
    require_valid(g, cert, "from comparability extraction")
    return cert


def extract_blocks_incomparability(
    g: Graph, p: Poset, alpha: float, config: AlgoConfig
) -> BlockCertificate:
    """Pairwise complete blocks in ``g``, the incomparability graph of ``p``."""
    _check_alpha(alpha)
    if p.n != g.n or g != incomparability_graph(p):
        raise WitnessMismatchException(
            "Graph is not the incomparability graph of the witness poset"
        )
    pairs = g.n * (g.n - 1) // 2
    if g.edge_count < alpha * pairs:
        raise PreconditionViolationException(
            f"Graph has {g.edge_count} edges, fewer than {alpha} * {pairs}"
        )
    cert = extract_blocks_comparability(p, alpha, config).relabeled(
        CertificateKind.COMPLETE
    )
    require_valid(g, cert, "from incomparability extraction")
    return cert
