"""Min-degree peeling in the complement graph."""

import numpy as np

from app.core.logger import logger
from app.domain.graph import Graph, VertexSet, complement
from app.infrastructure.exceptions import (
    AlgorithmInvariantException,
    PreconditionViolationException,
)


def peeling_fraction(alpha: float) -> float:
    """Density left after peeling a graph with at least alpha*C(n,2) non-edges."""
    return alpha / 4


def peel_to_bounded_max_degree(g: Graph, alpha: float) -> VertexSet:
    """Vertex set U with ``|U| >= (alpha/4) n`` and ``Delta(g[U]) <= (1 - alpha/4)|U|``.

    Repeatedly deletes the smallest-index vertex whose degree in the
    complement of the remaining graph is below ``alpha/4`` times the current
    size.
    """
    n = g.n
    if not 0 < alpha <= 1:
        raise PreconditionViolationException(f"alpha must be in (0, 1], got {alpha}")
    if n < 2:
        raise PreconditionViolationException(f"Peeling needs n >= 2, got {n}")
    pairs = n * (n - 1) // 2
    if g.edge_count > (1 - alpha) * pairs:
        raise PreconditionViolationException(
            f"Graph has {g.edge_count} edges, more than (1 - {alpha}) * {pairs}"
        )

    alpha1 = peeling_fraction(alpha)
    sparse = complement(g).matrix
    degree = sparse.sum(axis=1).astype(np.int64)
    alive = np.ones(n, dtype=bool)
    size = n
    while size:
        low = np.flatnonzero(alive & (degree < alpha1 * size))
        if low.size == 0:
            break
        v = int(low[0])
        alive[v] = False
        degree -= sparse[v]
        size -= 1

    kept = np.flatnonzero(alive)
    if size < alpha1 * n:
        raise AlgorithmInvariantException(
            f"Peeling kept {size} vertices, fewer than {alpha1} * {n}"
        )
    inner = g.matrix[np.ix_(kept, kept)].sum(axis=1)
    if inner.size and inner.max() > (1 - alpha1) * size:
        raise AlgorithmInvariantException(
            f"Peeled graph has degree {int(inner.max())} > (1 - {alpha1}) * {size}"
        )
    logger.debug(f"Peeling kept {size}/{n} vertices (alpha1={alpha1:.4g})")
    return frozenset(kept.tolist())
