import hashlib
import math
import time
from concurrent.futures import ProcessPoolExecutor
from enum import Enum
from typing import Iterable, List, Optional

import numpy as np

from app.application.certificates import validate_certificate
from app.application.ramsey import is_clique, is_independent
from app.application.use_cases.string_eh import StringEHUseCase
from app.application.use_cases.string_quasi_eh import StringQuasiEHUseCase
from app.core.config import PipelineConfig
from app.core.logger import logger
from app.core.seeding import derive_rng, derive_seed
from app.domain.entities import RunRecord
from app.domain.geometry import intersection_graph, permutation_to_segments
from app.domain.graph import Graph
from app.domain.interfaces import RunRecordRepository
from app.domain.poset import (
    Poset,
    incomparability_graph,
    poset_from_permutation,
    random_poset_dimension_k,
)
from app.infrastructure.exceptions import EHToolkitException, InvalidInputException
from app.infrastructure.io.schemas import CertificateSchema


class BenchFamily(str, Enum):
    DIM2 = "dim2"
    DIM3 = "dim3"
    PERM_CURVES = "perm-curves"


def build_instance(
    family: BenchFamily, n: int, seed: int
) -> tuple[Graph, Optional[Poset]]:
    """Graph of one bench trial, with the witness the family carries.

    ``perm-curves`` instances come without a witness and go through
    reconstruction in the dense path.
    """
    if n < 2:
        raise InvalidInputException(f"Bench instances need n >= 2, got {n}")
    if family is BenchFamily.DIM3:
        poset = random_poset_dimension_k(n, 3, seed)
        return incomparability_graph(poset), poset
    pi = derive_rng(seed, "bench-permutation", n).permutation(n)
    if family is BenchFamily.DIM2:
        poset = poset_from_permutation(pi)
        return incomparability_graph(poset), poset
    curves, _ = permutation_to_segments(pi)
    return intersection_graph(curves), None


def graph_digest(g: Graph) -> str:
    h = hashlib.sha256(f"{g.n}:".encode("ascii"))
    h.update(np.packbits(g.matrix, axis=None).tobytes())
    return h.hexdigest()


def _run_trial(
    family: BenchFamily,
    n: int,
    seed: int,
    config: PipelineConfig,
    with_ramsey: bool,
) -> RunRecord:
    algo = config.algo.model_copy(update={"seed": seed})
    config = config.model_copy(update={"algo": algo})
    g, witness = build_instance(family, n, seed)
    started = time.perf_counter()
    outcome = StringQuasiEHUseCase(config).execute(g, witness)
    cert = outcome.certificate

    size, homogeneous = 0, False
    if with_ramsey:
        use_case = StringEHUseCase(config)
        result = use_case.execute(g, witness)
        best = result.best
        size = len(best)
        check = is_clique if result.best_is_clique else is_independent
        homogeneous = check(g, best) and size >= n ** (use_case.exponent / 2) - 1e-9
    runtime_ms = (time.perf_counter() - started) * 1000

    return RunRecord(
        family=family.value,
        n=n,
        seed=seed,
        input_digest=graph_digest(g),
        branch=outcome.branch,
        t=cert.t,
        min_block=cert.min_block,
        c=cert.exponent,
        clique_or_indep_size=size,
        runtime_ms=round(runtime_ms, 3),
        certificate_valid=validate_certificate(g, cert).passed,
        homogeneous_valid=homogeneous,
        config=config.model_dump(mode="json"),
        certificate=CertificateSchema.from_entity(cert).model_dump(mode="json"),
    )


def parse_n_range(text: str) -> List[int]:
    """``a..b`` doubling from ``a`` up to ``b``; a single number means one size."""
    try:
        if ".." not in text:
            return [int(text)]
        low, high = (int(part) for part in text.split("..", 1))
    except ValueError as e:
        raise InvalidInputException(f"Malformed n-range {text!r}: {e}") from e
    if low < 2 or high < low:
        raise InvalidInputException(f"n-range needs 2 <= a <= b, got {text!r}")
    sizes = [low * 2**i for i in range(int(math.log2(high / low)) + 1)]
    return sizes if sizes[-1] == high else sizes + [high]


class BenchUseCase:
    """Use case for running the pipeline over a generated instance family."""

    def __init__(self, repository: RunRecordRepository, config: PipelineConfig):
        self.repository = repository
        self.config = config

    def execute(
        self,
        family: BenchFamily,
        n_values: Iterable[int],
        trials: int,
        workers: int = 1,
        with_ramsey: bool = True,
    ) -> List[RunRecord]:
        """
        Run ``trials`` seeded trials for each size and persist the rows.

        Trials are independent, so with ``workers > 1`` they run in a process
        pool; rows are ordered by ``(n, seed)`` either way.
        """
        if trials < 1:
            raise InvalidInputException(f"trials must be >= 1, got {trials}")
        base_seed = self.config.algo.seed
        jobs = [
            (family, n, derive_seed(base_seed, "bench", family.value, n, trial))
            for n in n_values
            for trial in range(trials)
        ]
        logger.info(
            f"Bench {family.value}: {len(jobs)} trials, workers={workers}, "
            f"ramsey={with_ramsey}"
        )
        try:
            if workers > 1:
                with ProcessPoolExecutor(max_workers=workers) as pool:
                    futures = [
                        pool.submit(_run_trial, f, n, s, self.config, with_ramsey)
                        for f, n, s in jobs
                    ]
                    records = [future.result() for future in futures]
            else:
                records = [
                    _run_trial(f, n, s, self.config, with_ramsey) for f, n, s in jobs
                ]
        except EHToolkitException:
            raise
        except Exception as e:
            logger.error(f"Error running bench for {family.value}: {e}", exc_info=True)
            raise EHToolkitException(f"Failed to run bench: {str(e)}") from e

        records.sort(key=lambda r: (r.n, r.seed))
        failed = [r for r in records if not r.certificate_valid]
        if failed:
            logger.warning(f"{len(failed)} bench rows carry invalid certificates")
        return self.repository.add_all(records)
