"""Machine check of block certificates."""

import math

import numpy as np

from app.core.logger import logger
from app.domain.entities import (
    BlockCertificate,
    CertificateKind,
    ValidationCheck,
    ValidationReport,
)
from app.domain.graph import Graph
from app.infrastructure.exceptions import CertificateValidationException

# relative slack for the floating-point side of t >= (n/|X|)^c
EXPONENT_TOLERANCE = 1e-12


def _fail(check: ValidationCheck, message: str) -> ValidationReport:
    return ValidationReport(passed=False, failed_check=check, message=message)


def exponent_inequality_holds(t: int, n: int, size: int, c: float) -> bool:
    """``t >= (n / size) ** c``, compared in log space."""
    return c * math.log(n / size) <= math.log(t) + EXPONENT_TOLERANCE


def validate_certificate(g: Graph, cert: BlockCertificate) -> ValidationReport:
    """Report the first violated certificate condition, or a pass."""
    if cert.t < 2:
        return _fail(ValidationCheck.BLOCK_COUNT, f"t={cert.t} < 2")
    if cert.host_n != g.n:
        return _fail(
            ValidationCheck.HOST_SIZE,
            f"certificate host_n={cert.host_n} but graph has {g.n} vertices",
        )
    if not cert.exponent > 0:
        return _fail(ValidationCheck.EXPONENT, f"exponent {cert.exponent} is not > 0")

    label = np.full(g.n, -1, dtype=np.int64)
    for i, block in enumerate(cert.blocks):
        if not block:
            return _fail(ValidationCheck.NON_EMPTY, f"block {i} is empty")
        bad = [v for v in block if not 0 <= v < g.n]
        if bad:
            return _fail(
                ValidationCheck.RANGE, f"block {i} has vertices {sorted(bad)[:5]}"
            )
        idx = np.fromiter(block, dtype=np.int64)
        taken = label[idx] >= 0
        if taken.any():
            v = int(idx[taken][0])
            return _fail(
                ValidationCheck.DISJOINTNESS,
                f"vertex {v} is in blocks {int(label[v])} and {i}",
            )
        label[idx] = i

    covered = np.flatnonzero(label >= 0)
    block_of = label[covered]
    across = block_of[:, None] != block_of[None, :]
    adjacent = g.matrix[np.ix_(covered, covered)]
    if cert.kind is CertificateKind.COMPLETE:
        wrong = across & ~adjacent
        relation = "non-adjacent"
    else:
        wrong = across & adjacent
        relation = "adjacent"
    if wrong.any():
        i, j = np.argwhere(wrong)[0]
        u, v = int(covered[i]), int(covered[j])
        return _fail(
            ValidationCheck.CROSSING,
            f"{u} (block {int(label[u])}) and {v} (block {int(label[v])}) are "
            f"{relation} in a {cert.kind.value} certificate",
        )

    for i, block in enumerate(cert.blocks):
        if not exponent_inequality_holds(cert.t, g.n, len(block), cert.exponent):
            bound = (g.n / len(block)) ** cert.exponent
            return _fail(
                ValidationCheck.EXPONENT,
                f"t={cert.t} < (n/|X_{i}|)^c = ({g.n}/{len(block)})^{cert.exponent:.6g}"
                f" = {bound:.6g}",
            )
    return ValidationReport(passed=True)


def require_valid(g: Graph, cert: BlockCertificate, context: str = "") -> None:
    report = validate_certificate(g, cert)
    if not report.passed:
        logger.error(f"Certificate rejected {context}: {report.message}")
        where = f" {context}" if context else ""
        raise CertificateValidationException(
            f"Invalid certificate{where}: {report.message}", report
        )
