"""Sparse-or-split step for posets with few comparabilities."""

import math
from typing import Optional, Sequence

import numpy as np

from app.application.peeling import peel_to_bounded_max_degree, peeling_fraction
from app.core.config import AlgoConfig
from app.core.logger import logger
from app.domain.entities import SparseCase, SparseOrSplit, SplitCase
from app.domain.graph import Graph, mask_of, members
from app.domain.poset import Poset, check_linear_extension, comparability_graph
from app.infrastructure.exceptions import (
    AlgorithmInvariantException,
    PreconditionViolationException,
)


def sparse_beta(alpha: float, epsilon: float) -> float:
    """Relative size guaranteed for both branches: ``alpha1^2 * epsilon / 24``."""
    alpha1 = peeling_fraction(alpha)
    return alpha1 * alpha1 * epsilon / 24


def _top(order: Sequence[int], size: int) -> list[int]:
    return list(order[len(order) - size :]) if size else []


def _first_non_edge(g: Graph, vertices: Sequence[int]) -> Optional[tuple[int, int]]:
    idx = np.asarray(sorted(vertices), dtype=np.intp)
    missing = ~g.matrix[np.ix_(idx, idx)]
    missing = np.triu(missing, k=1)
    if not missing.any():
        return None
    i, j = np.argwhere(missing)[0]
    return int(idx[i]), int(idx[j])


def sparse_or_split(
    p: Poset,
    le: Sequence[int],
    alpha: float,
    epsilon: float,
    config: AlgoConfig,
    graph: Optional[Graph] = None,
) -> SparseOrSplit:
    """Either a sparse pair ``A <_l B`` or two sets with no comparabilities between.

    ``graph`` may carry the precomputed comparability graph of ``p``.
    """
    g = graph if graph is not None else comparability_graph(p)
    n = p.n
    if n < 2:
        raise PreconditionViolationException(f"sparse_or_split needs n >= 2, got {n}")
    if not check_linear_extension(p, le):
        raise PreconditionViolationException("le is not a linear extension of p")

    alpha1 = peeling_fraction(alpha)
    beta = sparse_beta(alpha, epsilon)
    floor_size = max(1.0, beta * n)

    peeled = peel_to_bounded_max_degree(g, alpha)
    position = np.empty(n, dtype=np.intp)
    position[np.asarray(le, dtype=np.intp)] = np.arange(n)
    ordered = sorted(peeled, key=lambda v: position[v])
    size = len(ordered)

    result: Optional[SparseOrSplit] = None
    if size >= 2:
        top_size = min(size - 1, max(1, math.ceil(alpha1 / 6 * size)))
        top = _top(ordered, top_size)
        bottom = ordered[: size - top_size]
        upper = _top(top, min(top_size, math.ceil(epsilon / 4 * top_size)))
        top_mask, upper_mask = mask_of(top), mask_of(upper)
        rest_mask = top_mask & ~upper_mask
        heavy_bar = epsilon / 2 * top_size

        heavy, light = [], []
        for v in bottom:
            if g.degree_into_mask(v, top_mask) >= heavy_bar:
                heavy.append(v)
            else:
                light.append(v)

        for v in heavy:
            x1 = g.rows[v] & rest_mask
            x2 = upper_mask & ~g.rows[v]
            if x1.bit_count() >= floor_size and x2.bit_count() >= floor_size:
                logger.info(
                    f"sparse_or_split: split at heavy vertex {v} "
                    f"({x1.bit_count()}, {x2.bit_count()})"
                )
                result = SplitCase(frozenset(members(x1)), frozenset(members(x2)))
                break
        else:
            result = _sparse_pair(g, light, top, alpha1, epsilon, size, floor_size)
        logger.debug(
            f"sparse_or_split: n={n}, peeled={size}, |T|={top_size}, "
            f"|U|={len(upper)}, heavy={len(heavy)}, light={len(light)}"
        )

    if result is None:
        result = _degenerate_split(g, ordered, beta, n)
    if config.check_invariants:
        _check_case(g, result, position, epsilon, floor_size)
    return result


def _sparse_pair(
    g: Graph,
    light: list[int],
    top: list[int],
    alpha1: float,
    epsilon: float,
    peeled_size: int,
    floor_size: float,
) -> Optional[SparseCase]:
    target = min(len(light), len(top), max(1, math.floor(alpha1 * peeled_size / 12)))
    if target < floor_size:
        return None
    a = sorted(light)[:target]
    a_mask = mask_of(a)
    # delete T-vertices with many neighbours in A, keep the smallest indices
    survivors = [
        w for w in sorted(top) if g.degree_into_mask(w, a_mask) < epsilon * target
    ]
    if len(survivors) < target:
        return None
    b = survivors[:target]
    b_mask = mask_of(b)
    if any(g.degree_into_mask(v, b_mask) > epsilon * target for v in a):
        return None
    logger.info(f"sparse_or_split: sparse pair with |A|=|B|={target}")
    return SparseCase(frozenset(a), frozenset(b))


def _degenerate_split(g: Graph, ordered: list[int], beta: float, n: int) -> SplitCase:
    if beta * n > 1:
        raise AlgorithmInvariantException(
            f"sparse_or_split produced neither branch at n={n}, beta*n={beta * n:.4g}"
        )
    pair = _first_non_edge(g, ordered) if len(ordered) >= 2 else None
    if pair is None:
        pair = _first_non_edge(g, range(n))
    if pair is None:
        raise AlgorithmInvariantException("Comparability graph is complete")
    logger.warning(
        f"sparse_or_split: beta*n={beta * n:.4g} <= 1, splitting on non-edge {pair}"
    )
    return SplitCase(frozenset([pair[0]]), frozenset([pair[1]]))


def _check_case(
    g: Graph,
    case: SparseOrSplit,
    position: np.ndarray,
    epsilon: float,
    floor_size: float,
) -> None:
    if isinstance(case, SplitCase):
        first, second = case.x1, case.x2
    else:
        first, second = case.a, case.b
    if first & second:
        raise AlgorithmInvariantException("sparse_or_split returned overlapping sets")
    if isinstance(case, SplitCase):
        if any(g.rows[v] & mask_of(second) for v in first):
            raise AlgorithmInvariantException("SplitCase sides are comparable")
        if min(len(first), len(second)) < floor_size:
            raise AlgorithmInvariantException(
                f"SplitCase sides {len(first)}, {len(second)} below {floor_size:.4g}"
            )
        return
    if len(first) != len(second) or len(first) < floor_size:
        raise AlgorithmInvariantException(
            f"SparseCase sizes {len(first)}, {len(second)} below {floor_size:.4g}"
        )
    if max(position[v] for v in first) > min(position[w] for w in second):
        raise AlgorithmInvariantException("SparseCase A is not below B")
    bound = epsilon * len(first)
    a_mask, b_mask = mask_of(first), mask_of(second)
    if any(g.degree_into_mask(v, b_mask) > bound for v in first) or any(
        g.degree_into_mask(w, a_mask) > bound for w in second
    ):
        raise AlgorithmInvariantException("SparseCase crossing degrees exceed epsilon")
