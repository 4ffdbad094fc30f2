"""Strict partial orders stored as their full transitive closure."""

import heapq
from typing import Iterable, Optional, Sequence

import networkx as nx
import numpy as np

from app.core.seeding import derive_rng
from app.domain.graph import Graph, complement, members
from app.infrastructure.exceptions import (
    CycleDetectedException,
    InvalidInputException,
    PreconditionViolationException,
)

LinearExtension = tuple[int, ...]


class Poset:
    """Strict order on ``0..n-1``; ``less[x, y]`` is ``x < y`` in the order."""

    def __init__(self, less: np.ndarray, *, trusted: bool = False):
        less = np.array(less, dtype=bool, copy=True)
        if less.ndim != 2 or less.shape[0] != less.shape[1]:
            raise InvalidInputException(f"Relation must be square, got {less.shape}")
        if not trusted:
            _check_strict_order(less)
        less.setflags(write=False)
        self._less = less

    @property
    def n(self) -> int:
        return self._less.shape[0]

    @property
    def less(self) -> np.ndarray:
        return self._less

    def precedes(self, x: int, y: int) -> bool:
        return bool(self._less[x, y])

    def comparable(self, x: int, y: int) -> bool:
        return bool(self._less[x, y] or self._less[y, x])

    def relation_pairs(self) -> list[tuple[int, int]]:
        xs, ys = np.nonzero(self._less)
        return list(zip(xs.tolist(), ys.tolist()))

    def relation_count(self) -> int:
        return int(self._less.sum())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return np.array_equal(self._less, other._less)

    __hash__ = None

    def __repr__(self) -> str:
        return f"Poset(n={self.n}, relations={self.relation_count()})"


def _check_strict_order(less: np.ndarray) -> None:
    if less.diagonal().any():
        x = int(np.flatnonzero(less.diagonal())[0])
        raise InvalidInputException(f"Relation is reflexive at {x}")
    both = less & less.T
    if both.any():
        x, y = (int(i) for i in np.argwhere(both)[0])
        raise InvalidInputException(f"Relation is not antisymmetric: {x} and {y}")
    weights = less.astype(np.float32)
    implied = (weights @ weights) > 0
    missing = implied & ~less
    if missing.any():
        x, y = (int(i) for i in np.argwhere(missing)[0])
        raise InvalidInputException(f"Relation is not transitive: missing ({x}, {y})")


def poset_from_relations(n: int, pairs: Iterable[Sequence[int]]) -> Poset:
    """Poset generated by ``pairs`` (each ``(x, y)`` means x below y)."""
    if n < 0:
        raise InvalidInputException(f"Element count must be non-negative, got {n}")
    dag = nx.DiGraph()
    dag.add_nodes_from(range(n))
    for pair in pairs:
        if len(pair) != 2:
            raise InvalidInputException(f"Relation {pair!r} is not an ordered pair")
        x, y = int(pair[0]), int(pair[1])
        if not (0 <= x < n and 0 <= y < n):
            raise InvalidInputException(f"Relation ({x}, {y}) is outside 0..{n - 1}")
        if x == y:
            raise CycleDetectedException([x])
        dag.add_edge(x, y)
    try:
        cycle = nx.find_cycle(dag)
    except nx.NetworkXNoCycle:
        cycle = None
    if cycle:
        raise CycleDetectedException([u for u, _ in cycle])

    above = [0] * n
    for x in reversed(list(nx.lexicographical_topological_sort(dag))):
        for y in dag.successors(x):
            above[x] |= (1 << y) | above[y]
    less = np.zeros((n, n), dtype=bool)
    for x, row in enumerate(above):
        less[x, members(row)] = True
    return Poset(less, trusted=True)


def poset_from_linear_orders(orders: Sequence[Sequence[int]]) -> Poset:
    """Intersection of linear orders, each listed from smallest to largest."""
    if not orders:
        raise InvalidInputException("At least one linear order is required")
    n = len(orders[0])
    less = np.ones((n, n), dtype=bool)
    for order in orders:
        order = np.asarray(order, dtype=np.intp)
        if order.shape != (n,) or not np.array_equal(np.sort(order), np.arange(n)):
            raise InvalidInputException("Every order must be a permutation of 0..n-1")
        position = np.empty(n, dtype=np.intp)
        position[order] = np.arange(n)
        less &= position[:, None] < position[None, :]
    return Poset(less, trusted=True)


def poset_from_permutation(pi: Sequence[int]) -> Poset:
    """Dimension-2 poset: ``i < j`` iff ``i < j`` and ``pi[i] < pi[j]``."""
    pi = np.asarray(pi, dtype=np.intp)
    if not np.array_equal(np.sort(pi), np.arange(len(pi))):
        raise InvalidInputException("pi must be a permutation of 0..n-1")
    return poset_from_linear_orders([np.arange(len(pi)), np.argsort(pi, kind="stable")])


def random_poset_dimension_k(n: int, k: int, seed: int) -> Poset:
    """Intersection of ``k`` uniformly random linear orders on ``n`` elements."""
    if k < 1:
        raise PreconditionViolationException(f"Dimension must be >= 1, got {k}")
    if n < 0:
        raise InvalidInputException(f"Element count must be non-negative, got {n}")
    rng = derive_rng(seed, "poset", n, k)
    return poset_from_linear_orders([rng.permutation(n) for _ in range(k)])


def linear_extension(p: Poset) -> LinearExtension:
    """Kahn's procedure, always taking the smallest available element."""
    indegree = p.less.sum(axis=0).astype(np.int64)
    ready = [int(x) for x in np.flatnonzero(indegree == 0)]
    heapq.heapify(ready)
    order: list[int] = []
    while ready:
        x = heapq.heappop(ready)
        order.append(x)
        successors = np.flatnonzero(p.less[x])
        indegree[successors] -= 1
        for y in successors[indegree[successors] == 0].tolist():
            heapq.heappush(ready, y)
    return tuple(order)


def check_linear_extension(p: Poset, le: Sequence[int]) -> bool:
    if len(le) != p.n:
        raise PreconditionViolationException(
            f"Linear extension has {len(le)} elements, poset has {p.n}"
        )
    order = np.asarray(le, dtype=np.intp)
    if not np.array_equal(np.sort(order), np.arange(p.n)):
        return False
    position = np.empty(p.n, dtype=np.intp)
    position[order] = np.arange(p.n)
    xs, ys = np.nonzero(p.less)
    return bool(np.all(position[xs] < position[ys]))


def comparability_graph(p: Poset) -> Graph:
    return Graph(p.less | p.less.T)


def incomparability_graph(p: Poset) -> Graph:
    return complement(comparability_graph(p))


def restrict(p: Poset, vertices: Iterable[int]) -> tuple[Poset, tuple[int, ...]]:
    """Induced subposet; element ``i`` of the result is ``mapping[i]`` in p."""
    mapping = tuple(sorted(set(int(v) for v in vertices)))
    if mapping and not (0 <= mapping[0] and mapping[-1] < p.n):
        raise InvalidInputException(f"Elements outside 0..{p.n - 1}")
    idx = np.asarray(mapping, dtype=np.intp)
    return Poset(p.less[np.ix_(idx, idx)], trusted=True), mapping


def witness_matches(g: Graph, p: Optional[Poset]) -> bool:
    """True iff ``g`` is exactly the incomparability graph of ``p``."""
    if p is None or p.n != g.n:
        return False
    return g == incomparability_graph(p)


def cover_pairs(p: Poset) -> list[tuple[int, int]]:
    """Transitive reduction: ``x < y`` with no element strictly between."""
    packed = np.packbits(p.less, axis=1, bitorder="little")
    above = [int.from_bytes(r.tobytes(), "little") for r in packed]
    pairs = []
    for x, row in enumerate(above):
        implied = 0
        for z in members(row):
            implied |= above[z]
        pairs.extend((x, y) for y in members(row & ~implied))
    return pairs