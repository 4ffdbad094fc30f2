"""Balanced vertex separators and the anticomplete split they yield."""

from itertools import combinations
from typing import Optional

from app.core.config import SeparatorStrategy
from app.core.logger import logger
from app.domain.entities import SeparatorResult
from app.domain.graph import Graph, VertexSet, mask_of, members
from app.infrastructure.exceptions import (
    AlgorithmInvariantException,
    ExactCapExceededException,
    SeparatorNotFoundException,
    SeparatorSplitException,
)

DEFAULT_EXACT_CAP = 22


def component_masks(g: Graph, alive: int) -> list[int]:
    """Connected components of ``g[alive]`` ordered by smallest vertex."""
    rows = g.rows
    components = []
    remaining = alive
    while remaining:
        seed = remaining & -remaining
        component = frontier = seed
        while frontier:
            grown = 0
            for v in members(frontier):
                grown |= rows[v]
            frontier = grown & remaining & ~component
            component |= frontier
        components.append(component)
        remaining &= ~component
    return components


def _result(g: Graph, separator: int) -> SeparatorResult:
    comps = component_masks(g, g.full_mask & ~separator)
    return SeparatorResult(
        frozenset(members(separator)), tuple(frozenset(members(c)) for c in comps)
    )


def _largest_component(g: Graph, separator: int) -> int:
    alive = g.full_mask & ~separator
    return max((c.bit_count() for c in component_masks(g, alive)), default=0)


def exact_separator(g: Graph, cap: int = DEFAULT_EXACT_CAP) -> SeparatorResult:
    """Smallest S with every component of ``g - S`` at most ``2n/3``.

    Among separators of that size the one with the smallest largest component
    wins, then the lexicographically first.
    """
    if g.n > cap:
        raise ExactCapExceededException(
            f"Exact separator search is capped at {cap} vertices, graph has {g.n}"
        )
    limit = 2 * g.n / 3
    for size in range(g.n + 1):
        best: Optional[tuple[int, int]] = None
        for chosen in combinations(range(g.n), size):
            separator = mask_of(chosen)
            largest = _largest_component(g, separator)
            if largest <= limit and (best is None or largest < best[0]):
                best = (largest, separator)
        if best is not None:
            return _result(g, best[1])
    raise AlgorithmInvariantException("Removing every vertex must be balanced")


def greedy_separator(g: Graph, budget: Optional[int] = None) -> SeparatorResult:
    """Remove the highest-degree vertex of the largest component until balanced.

    Stops once every component holds at most two thirds of the remaining
    vertices, which also bounds them by ``2n/3`` and lets
    ``split_from_separator`` reach its one-third guarantee.
    """
    budget = g.n if budget is None else budget
    rows = g.rows
    alive = g.full_mask
    removed = 0
    while True:
        comps = component_masks(g, alive)
        remaining = alive.bit_count()
        largest = max(comps, key=lambda c: (c.bit_count(), -(c & -c)), default=0)
        if largest.bit_count() <= 2 * remaining / 3:
            return _result(g, removed)
        if removed.bit_count() >= budget:
            raise SeparatorNotFoundException(
                f"Greedy separator used its budget of {budget} vertices"
            )
        v = max(members(largest), key=lambda u: ((rows[u] & alive).bit_count(), -u))
        alive &= ~(1 << v)
        removed |= 1 << v


def trivial_separator(g: Graph) -> SeparatorResult:
    """The first ``ceil(n/3)`` vertices, whose removal leaves at most ``2n/3``."""
    return _result(g, mask_of(range(-(-g.n // 3))))


def find_balanced_separator(
    g: Graph,
    strategy: SeparatorStrategy = SeparatorStrategy.AUTO,
    exact_cap: int = DEFAULT_EXACT_CAP,
    budget: Optional[int] = None,
) -> SeparatorResult:
    if strategy is SeparatorStrategy.AUTO:
        strategy = (
            SeparatorStrategy.EXACT if g.n <= exact_cap else SeparatorStrategy.GREEDY
        )
    if strategy is SeparatorStrategy.EXACT:
        result = exact_separator(g, exact_cap)
    else:
        result = greedy_separator(g, budget)
    limit = 2 * g.n / 3
    if any(len(c) > limit for c in result.components):
        raise AlgorithmInvariantException("Separator leaves a component above 2n/3")
    logger.debug(
        f"{strategy.value} separator of size {len(result.separator)}, "
        f"components {sorted((len(c) for c in result.components), reverse=True)[:5]}"
    )
    return result


def split_from_separator(g: Graph, sep: SeparatorResult) -> tuple[VertexSet, VertexSet]:
    """Pack components, largest first, into two anticomplete sides of equal size."""
    remaining = g.n - len(sep.separator)
    if remaining < 2:
        raise SeparatorSplitException(
            f"Only {remaining} vertices remain outside the separator"
        )
    sides: tuple[list[int], list[int]] = ([], [])
    for component in sorted(sep.components, key=lambda c: (-len(c), min(c))):
        lighter = 0 if len(sides[0]) <= len(sides[1]) else 1
        sides[lighter].extend(component)
    smaller = min(len(sides[0]), len(sides[1]))
    if smaller == 0 or 3 * smaller < remaining:
        raise SeparatorSplitException(
            f"Components {sorted((len(c) for c in sep.components), reverse=True)[:5]} "
            f"cannot fill two sides of at least {remaining}/3"
        )
    x1 = frozenset(sorted(sides[0])[:smaller])
    x2 = frozenset(sorted(sides[1])[:smaller])
    if any(g.rows[v] & mask_of(x2) for v in x1):
        raise AlgorithmInvariantException("Separator sides are adjacent")
    return x1, x2
