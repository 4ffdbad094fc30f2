from typing import Optional

from app.application.cograph import homogeneous_from_certificates
from app.application.use_cases.string_quasi_eh import StringGraphOracle
from app.application.witness import reconstruct_incomparability_witness
from app.core.config import PipelineConfig, WitnessMode
from app.core.logger import logger
from app.domain.entities import CotreeNode, RamseyResult
from app.domain.graph import Graph
from app.domain.poset import Poset
from app.infrastructure.exceptions import (
    EHToolkitException,
    PreconditionViolationException,
)

# cotree labels are cross-checked against the graph up to this size
SEMANTICS_CHECK_LIMIT = 200


def _trivially_homogeneous(g: Graph) -> Optional[RamseyResult]:
    """Edgeless and complete graphs answer themselves, as one-level cotrees."""
    everything = frozenset(range(g.n))
    single = frozenset(range(min(g.n, 1)))
    leaves = [CotreeNode.leaf([v]) for v in range(g.n)]
    if g.edge_count == 0:
        return RamseyResult(
            single, everything, exact=True, cotree=CotreeNode.union(*leaves)
        )
    if g.edge_count == g.n * (g.n - 1) // 2:
        return RamseyResult(
            everything, single, exact=True, cotree=CotreeNode.join(*leaves)
        )
    return None


class StringEHUseCase:
    """Use case for a large clique or independent set in a string graph."""

    def __init__(self, config: PipelineConfig):
        self.config = config
        self.oracle = StringGraphOracle(config)

    @property
    def exponent(self) -> float:
        return self.oracle.exponent

    def execute(self, g: Graph, witness: Optional[Poset] = None) -> RamseyResult:
        """
        Refine ``g`` with pipeline certificates and read off homogeneous sets.

        A witness reconstructed once for the whole graph restricts to every
        sub-instance, so dimension-two inputs are oriented a single time.
        """
        trivial = _trivially_homogeneous(g)
        if trivial is not None:
            logger.info(f"Graph with n={g.n} is homogeneous as a whole")
            return trivial
        try:
            if (
                witness is None
                and g.n >= 2
                and self.config.dense_witness is WitnessMode.DIMENSION_TWO
            ):
                try:
                    witness = reconstruct_incomparability_witness(g)
                except PreconditionViolationException as e:
                    logger.warning(f"No global witness for n={g.n}: {e}")
            check = self.config.algo.check_invariants and g.n <= SEMANTICS_CHECK_LIMIT
            return homogeneous_from_certificates(
                g, self.oracle, self.exponent, witness, check_semantics=check
            )
        except EHToolkitException:
            raise
        except Exception as e:
            logger.error(f"Error extracting homogeneous set: {e}", exc_info=True)
            raise EHToolkitException(
                f"Failed to extract homogeneous set: {str(e)}"
            ) from e


def string_eh(
    g: Graph, witness: Optional[Poset] = None, cfg: Optional[PipelineConfig] = None
) -> RamseyResult:
    cfg = cfg or PipelineConfig.from_settings()
    return StringEHUseCase(cfg).execute(g, witness)
