"""Exact maximum clique and independent set for small graphs."""

from typing import Iterable, Optional

from app.core.config import settings
from app.core.logger import logger
from app.domain.entities import RamseyResult
from app.domain.graph import Graph, complement, mask_of, members
from app.infrastructure.exceptions import ExactCapExceededException


def _color_classes(rows: tuple[int, ...], candidates: int) -> list[tuple[int, int]]:
    """Greedy colouring of ``candidates``; ``(vertex, colour)`` in colour order."""
    order: list[tuple[int, int]] = []
    uncolored = candidates
    color = 0
    while uncolored:
        color += 1
        available = uncolored
        while available:
            bit = available & -available
            v = bit.bit_length() - 1
            order.append((v, color))
            uncolored &= ~bit
            available &= ~bit & ~rows[v]
    return order


def max_clique(g: Graph) -> frozenset[int]:
    """Branch and bound over bitsets, pruned by the greedy colouring count."""
    rows = g.rows
    best: list[int] = []

    def expand(chosen: list[int], candidates: int) -> None:
        nonlocal best
        for v, color in reversed(_color_classes(rows, candidates)):
            if len(chosen) + color <= len(best):
                return
            extended = chosen + [v]
            narrowed = candidates & rows[v]
            if narrowed:
                expand(extended, narrowed)
            elif len(extended) > len(best):
                best = extended
            candidates &= ~(1 << v)

    if g.n:
        expand([], g.full_mask)
    return frozenset(best)


def max_independent_set(g: Graph) -> frozenset[int]:
    return max_clique(complement(g))


def brute_force_ramsey(g: Graph, cap: Optional[int] = None) -> RamseyResult:
    """Exact maximum clique and maximum independent set of ``g``."""
    cap = settings.exact_cap if cap is None else cap
    if g.n > cap:
        raise ExactCapExceededException(
            f"Exact Ramsey search is capped at {cap} vertices, graph has {g.n}"
        )
    result = RamseyResult(max_clique(g), max_independent_set(g), exact=True)
    logger.debug(
        f"brute_force_ramsey: n={g.n}, omega={len(result.clique)}, "
        f"alpha={len(result.independent)}"
    )
    return result


def is_clique(g: Graph, vertices: Iterable[int]) -> bool:
    vs = sorted(vertices)
    mask = mask_of(vs)
    return all((g.rows[v] | (1 << v)) & mask == mask for v in vs)


def is_independent(g: Graph, vertices: Iterable[int]) -> bool:
    mask = mask_of(vertices)
    return not any(g.rows[v] & mask for v in members(mask))

