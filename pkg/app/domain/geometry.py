"""Integer polylines and their intersection graphs.

All predicates use exact integer orientation tests. Coordinates are bounded
by ``COORD_BOUND`` so every cross product fits in int64 and the vectorised
kernel agrees bit-for-bit with the scalar one.
"""

from dataclasses import dataclass
from itertools import combinations, product
from operator import index
from typing import Iterable, Sequence

import numpy as np

from app.domain.graph import Graph, build_graph
from app.domain.poset import Poset, poset_from_permutation
from app.infrastructure.exceptions import (
    CoordinateBoundException,
    InvalidInputException,
)

COORD_BOUND = 2**20
SEGMENT_SPACING = 2
SEGMENT_HEIGHT = 1024
# rows of the pairwise segment kernel evaluated per chunk
_CHUNK = 512

Point = tuple[int, int]
Segment = tuple[Point, Point]
Polyline = tuple[Point, ...]


def _check_point(point: Sequence[int]) -> Point:
    if len(point) != 2:
        raise InvalidInputException(f"Point {point!r} must have two coordinates")
    try:
        x, y = index(point[0]), index(point[1])
    except TypeError as e:
        raise InvalidInputException(f"Coordinates must be integers: {point!r}") from e
    if abs(x) > COORD_BOUND or abs(y) > COORD_BOUND:
        raise CoordinateBoundException(
            f"Point ({x}, {y}) exceeds the coordinate bound {COORD_BOUND}"
        )
    return x, y


@dataclass(frozen=True)
class CurveFamily:
    """Polylines with at least one segment each."""

    curves: tuple[Polyline, ...]

    def __post_init__(self):
        checked = []
        for i, curve in enumerate(self.curves):
            if len(curve) < 2:
                raise InvalidInputException(f"Curve {i} needs at least two points")
            checked.append(tuple(_check_point(p) for p in curve))
        object.__setattr__(self, "curves", tuple(checked))

    @classmethod
    def of(cls, curves: Iterable[Iterable[Sequence[int]]]) -> "CurveFamily":
        return cls(tuple(tuple(tuple(p) for p in curve) for curve in curves))

    def __len__(self) -> int:
        return len(self.curves)

    def segments(self, i: int) -> list[Segment]:
        curve = self.curves[i]
        return list(zip(curve[:-1], curve[1:]))


def orientation(a: Point, b: Point, c: Point) -> int:
    """Sign of the turn a -> b -> c (1 left, -1 right, 0 collinear)."""
    cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (cross > 0) - (cross < 0)


def _within_box(a: Point, b: Point, c: Point) -> bool:
    in_x = min(a[0], b[0]) <= c[0] <= max(a[0], b[0])
    return in_x and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])


def segments_intersect(
    s1: Sequence[Sequence[int]], s2: Sequence[Sequence[int]]
) -> bool:
    """True iff the closed segments share a point (touching included)."""
    p1, p2 = _check_point(s1[0]), _check_point(s1[1])
    q1, q2 = _check_point(s2[0]), _check_point(s2[1])
    d1 = orientation(q1, q2, p1)
    d2 = orientation(q1, q2, p2)
    d3 = orientation(p1, p2, q1)
    d4 = orientation(p1, p2, q2)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    return (
        (d1 == 0 and _within_box(q1, q2, p1))
        or (d2 == 0 and _within_box(q1, q2, p2))
        or (d3 == 0 and _within_box(p1, p2, q1))
        or (d4 == 0 and _within_box(p1, p2, q2))
    )


def _orient(ax, ay, bx, by, cx, cy) -> np.ndarray:
    return np.sign((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))


def _in_box(ax, ay, bx, by, cx, cy) -> np.ndarray:
    return (
        (np.minimum(ax, bx) <= cx)
        & (cx <= np.maximum(ax, bx))
        & (np.minimum(ay, by) <= cy)
        & (cy <= np.maximum(ay, by))
    )


def _segment_pairs(rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """Pairwise intersection matrix between two int64 arrays of shape (k, 4)."""
    px1, py1, px2, py2 = (rows[:, i][:, None] for i in range(4))
    qx1, qy1, qx2, qy2 = (cols[:, i][None, :] for i in range(4))
    d1 = _orient(qx1, qy1, qx2, qy2, px1, py1)
    d2 = _orient(qx1, qy1, qx2, qy2, px2, py2)
    d3 = _orient(px1, py1, px2, py2, qx1, qy1)
    d4 = _orient(px1, py1, px2, py2, qx2, qy2)
    hit = (d1 * d2 < 0) & (d3 * d4 < 0)
    hit |= (d1 == 0) & _in_box(qx1, qy1, qx2, qy2, px1, py1)
    hit |= (d2 == 0) & _in_box(qx1, qy1, qx2, qy2, px2, py2)
    hit |= (d3 == 0) & _in_box(px1, py1, px2, py2, qx1, qy1)
    hit |= (d4 == 0) & _in_box(px1, py1, px2, py2, qx2, qy2)
    return hit


def intersection_graph(c: CurveFamily) -> Graph:
    """One vertex per curve, adjacent iff some segment pair intersects."""
    n = len(c)
    if n == 0:
        return Graph(np.zeros((0, 0), dtype=bool))
    owners: list[int] = []
    coords: list[tuple[int, int, int, int]] = []
    for i in range(n):
        for (x1, y1), (x2, y2) in c.segments(i):
            owners.append(i)
            coords.append((x1, y1, x2, y2))
    segs = np.asarray(coords, dtype=np.int64)
    owner = np.asarray(owners, dtype=np.intp)
    one_segment_each = len(segs) == n
    adjacency = np.zeros((n, n), dtype=bool)
    for start in range(0, len(segs), _CHUNK):
        block = _segment_pairs(segs[start : start + _CHUNK], segs)
        if one_segment_each:
            adjacency[start : start + len(block)] = block
            continue
        # scatter hits onto their owning curves; linear in the hit count
        rows, cols = np.nonzero(block)
        adjacency[owner[rows + start], owner[cols]] = True
    adjacency |= adjacency.T
    np.fill_diagonal(adjacency, False)
    return Graph(adjacency)


def intersection_graph_bruteforce(c: CurveFamily) -> Graph:
    """Pairwise enumeration with the scalar predicate, for cross-checking."""
    edges = [
        (i, j)
        for i, j in combinations(range(len(c)), 2)
        if any(
            segments_intersect(s, t) for s, t in product(c.segments(i), c.segments(j))
        )
    ]
    return build_graph(len(c), edges)


def permutation_to_segments(pi: Sequence[int]) -> tuple[CurveFamily, Poset]:
    """Segment ``i`` joins ``(i*K, 0)`` to ``(pi[i]*K, H)``.

    Two segments cross iff their pair is an inversion of ``pi``, so the
    intersection graph is the incomparability graph of the returned
    dimension-2 witness.
    """
    witness = poset_from_permutation(pi)
    curves = tuple(
        ((i * SEGMENT_SPACING, 0), (int(p) * SEGMENT_SPACING, SEGMENT_HEIGHT))
        for i, p in enumerate(pi)
    )
    return CurveFamily(curves), witness
