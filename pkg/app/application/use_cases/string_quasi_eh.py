import math
from dataclasses import dataclass
from typing import Optional

from app.application.certificates import require_valid
from app.application.extraction import (
    exponent_constants,
    extract_blocks_incomparability,
)
from app.application.separators import (
    find_balanced_separator,
    split_from_separator,
    trivial_separator,
)
from app.application.witness import reconstruct_incomparability_witness
from app.core.config import PipelineConfig, SeparatorStrategy, WitnessMode
from app.core.logger import logger
from app.domain.entities import BlockCertificate, CertificateKind, OracleInput
from app.domain.graph import Graph
from app.domain.interfaces import BlockOracle
from app.domain.poset import Poset, witness_matches
from app.infrastructure.exceptions import (
    EHToolkitException,
    ExactCapExceededException,
    OracleRequiredException,
    PreconditionViolationException,
    SeparatorNotFoundException,
    SeparatorSplitException,
    WitnessMismatchException,
)

SEPARATOR_BRANCH = "separator"
DENSE_BRANCH = "dense"


@dataclass(frozen=True)
class PipelineExponent:
    dense_alpha: float
    c0: float
    separator_bound: float

    @property
    def c(self) -> float:
        return min(self.c0, self.separator_bound)


def pipeline_exponent(config: PipelineConfig) -> PipelineExponent:
    """``c = min(c0, 1 / log2(1 / lambda))``.

    ``c0`` is taken at the smaller of ``epsilon`` and ``epsilon_safe`` so it
    also covers extractions restarted with the fallback density.
    """
    algo = config.algo
    alpha = min(1.0, 2 * config.lambda_)
    epsilon = min(algo.epsilon, algo.epsilon_safe)
    return PipelineExponent(
        dense_alpha=alpha,
        c0=exponent_constants(alpha, epsilon, algo.delta).c,
        separator_bound=1 / math.log2(1 / config.lambda_),
    )


@dataclass(frozen=True)
class QuasiEHOutcome:
    certificate: BlockCertificate
    branch: str


class StringQuasiEHUseCase:
    """Use case for block certificates of string graphs."""

    def __init__(self, config: PipelineConfig):
        self.config = config
        self.exponent = pipeline_exponent(config)

    def execute(self, g: Graph, witness: Optional[Poset] = None) -> QuasiEHOutcome:
        """
        Certify ``g`` with blocks of exponent ``c``.

        Branches:
        1. At most lambda*n^2 edges: balanced separator, two anticomplete sides
        2. Otherwise: incomparability witness, pairwise complete blocks
        """
        if g.n < 2:
            raise PreconditionViolationException(f"Pipeline needs n >= 2, got {g.n}")
        try:
            if g.edge_count <= self.config.lambda_ * g.n * g.n:
                outcome = self._separator_path(g)
            else:
                outcome = self._dense_path(g, witness)
            require_valid(g, outcome.certificate, f"from the {outcome.branch} path")
            return outcome
        except EHToolkitException:
            raise
        except Exception as e:
            logger.error(f"Error certifying graph with n={g.n}: {e}", exc_info=True)
            raise EHToolkitException(f"Failed to certify graph: {str(e)}") from e

    def _separator_path(self, g: Graph) -> QuasiEHOutcome:
        strategies = [self.config.separator_strategy, SeparatorStrategy.GREEDY, None]
        for strategy in strategies:
            try:
                if strategy is None:
                    sep = trivial_separator(g)
                else:
                    sep = find_balanced_separator(
                        g, strategy, self.config.separator_exact_cap
                    )
                x1, x2 = split_from_separator(g, sep)
                break
            except (
                ExactCapExceededException,
                SeparatorNotFoundException,
                SeparatorSplitException,
            ) as e:
                logger.warning(f"Separator strategy {strategy} failed: {e}")
        else:
            raise SeparatorSplitException(
                f"No separator strategy produced a balanced split for n={g.n}"
            )
        logger.info(
            f"Separator path: n={g.n}, edges={g.edge_count}, |S|={len(sep.separator)}, "
            f"sides {len(x1)}"
        )
        cert = BlockCertificate(CertificateKind.EMPTY, (x1, x2), self.exponent.c, g.n)
        return QuasiEHOutcome(cert, SEPARATOR_BRANCH)

    def _resolve_witness(self, g: Graph, witness: Optional[Poset]) -> Poset:
        if witness is not None:
            if not witness_matches(g, witness):
                raise WitnessMismatchException(
                    "Witness poset does not have g as its incomparability graph"
                )
            return witness
        if self.config.dense_witness is WitnessMode.DIMENSION_TWO:
            try:
                return reconstruct_incomparability_witness(g)
            except PreconditionViolationException as e:
                raise OracleRequiredException(
                    f"Dense graph with n={g.n} has no incomparability witness ({e}); "
                    "an external incomparability-subgraph oracle is required"
                ) from e
        raise OracleRequiredException(
            f"Dense graph with n={g.n} and no witness: an external "
            "incomparability-subgraph oracle is required (witness mode "
            f"{self.config.dense_witness.value})"
        )

    def _dense_path(self, g: Graph, witness: Optional[Poset]) -> QuasiEHOutcome:
        poset = self._resolve_witness(g, witness)
        cert = extract_blocks_incomparability(
            g, poset, self.exponent.dense_alpha, self.config.algo
        )
        logger.info(f"Dense path: n={g.n}, t={cert.t}, min block {cert.min_block}")
        return QuasiEHOutcome(cert.with_exponent(self.exponent.c), DENSE_BRANCH)


class StringGraphOracle(BlockOracle):
    """Block oracle backed by the string-graph pipeline."""

    def __init__(self, config: PipelineConfig):
        self.use_case = StringQuasiEHUseCase(config)

    @property
    def exponent(self) -> float:
        return self.use_case.exponent.c

    def certify(self, instance: OracleInput) -> BlockCertificate:
        return self.use_case.execute(instance.graph, instance.witness).certificate


def string_quasi_eh(
    g: Graph, witness: Optional[Poset] = None, cfg: Optional[PipelineConfig] = None
) -> BlockCertificate:
    cfg = cfg or PipelineConfig.from_settings()
    return StringQuasiEHUseCase(cfg).execute(g, witness).certificate
