"""Poset witnesses recovered from graphs.

``transitive_orientation`` decomposes the edges into implication classes
(arcs forced by the Gamma relation ``ab ~ ab'`` when ``bb'`` is a non-edge,
``ab ~ a'b`` when ``aa'`` is a non-edge), taking one class at a time from
the edges still unassigned. The graph is a comparability graph iff no class
contains an arc together with its reverse, and then the union of the
classes is a transitive orientation.
"""

from typing import Optional

import numpy as np

from app.core.logger import logger
from app.domain.geometry import SEGMENT_HEIGHT, SEGMENT_SPACING, CurveFamily
from app.domain.graph import Graph, complement, members
from app.domain.poset import Poset, incomparability_graph
from app.infrastructure.exceptions import PreconditionViolationException


def _implication_class(
    remaining: list[int], a: int, b: int
) -> Optional[dict[int, int]]:
    """Arcs forced by ``a -> b`` in the graph of ``remaining`` edges, by tail."""
    arcs: dict[int, int] = {a: 1 << b}
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        # x -> y' for y' adjacent to x but not to y
        for y2 in members(remaining[x] & ~remaining[y] & ~(1 << y)):
            if arcs.get(x, 0) >> y2 & 1:
                continue
            if arcs.get(y2, 0) >> x & 1:
                return None
            arcs[x] = arcs.get(x, 0) | (1 << y2)
            stack.append((x, y2))
        # x' -> y for x' adjacent to y but not to x
        for x2 in members(remaining[y] & ~remaining[x] & ~(1 << x)):
            if arcs.get(x2, 0) >> y & 1:
                continue
            if arcs.get(y, 0) >> x2 & 1:
                return None
            arcs[x2] = arcs.get(x2, 0) | (1 << y)
            stack.append((x2, y))
    return arcs


def transitive_orientation(g: Graph) -> Optional[Poset]:
    """Strict order whose comparability graph is ``g``, or None if there is none."""
    remaining = list(g.rows)
    oriented = [0] * g.n
    classes = 0
    for a in range(g.n):
        while upper := remaining[a] >> (a + 1):
            b = (upper & -upper).bit_length() + a
            arcs = _implication_class(remaining, a, b)
            if arcs is None:
                logger.debug(f"Edge ({a}, {b}) forces its own reverse")
                return None
            for x, heads in arcs.items():
                oriented[x] |= heads
                for y in members(heads):
                    remaining[x] &= ~(1 << y)
                    remaining[y] &= ~(1 << x)
            classes += 1
    less = np.zeros((g.n, g.n), dtype=bool)
    for x, heads in enumerate(oriented):
        less[x, members(heads)] = True
    logger.debug(f"Oriented {g.edge_count} edges in {classes} implication classes")
    return Poset(less)


def reconstruct_incomparability_witness(g: Graph) -> Poset:
    """Poset whose incomparability graph is ``g``."""
    witness = transitive_orientation(complement(g))
    if witness is None:
        raise PreconditionViolationException(
            "Graph is not an incomparability graph: its complement has no "
            "transitive orientation"
        )
    return witness


def dimension_two_realizer(p: Poset) -> tuple[np.ndarray, np.ndarray]:
    """Positions of every element in two linear orders whose intersection is ``p``.

    With ``Q`` a transitive orientation of the incomparability graph, the
    orders are ``P + Q`` and ``P + Q^-1``.
    """
    conjugate = transitive_orientation(incomparability_graph(p))
    if conjugate is None:
        raise PreconditionViolationException("Poset does not have dimension <= 2")
    positions = []
    for flip in (conjugate.less, conjugate.less.T):
        total = p.less | flip
        rank = total.sum(axis=0)
        if not np.array_equal(np.sort(rank), np.arange(p.n)):
            raise PreconditionViolationException("Poset does not have dimension <= 2")
        positions.append(rank)
    return positions[0], positions[1]


def poset_to_segments(p: Poset) -> tuple[CurveFamily, Poset]:
    """Segments between two parallel lines realizing ``incomparability_graph(p)``."""
    bottom, top = dimension_two_realizer(p)
    curves = tuple(
        ((int(x) * SEGMENT_SPACING, 0), (int(y) * SEGMENT_SPACING, SEGMENT_HEIGHT))
        for x, y in zip(bottom, top)
    )
    return CurveFamily(curves), p
