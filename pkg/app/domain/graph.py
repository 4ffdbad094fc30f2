"""Immutable simple graphs.

Adjacency is kept twice: a read-only boolean matrix (for slicing and
complements) and one Python-int bitset per vertex (for ``|N(v) & S|``
counts, which the block-extraction algorithms issue constantly).
"""

from enum import Enum
from functools import reduce
from operator import index, or_
from typing import Iterable, Optional, Sequence

import networkx as nx
import numpy as np

from app.infrastructure.exceptions import (
    InvalidInputException,
    PreconditionViolationException,
)

VertexSet = frozenset[int]


class CrossingStatus(str, Enum):
    COMPLETE = "complete"
    EMPTY = "empty"
    MIXED = "mixed"


def mask_of(vertices: Iterable[int]) -> int:
    """Bitset with bit ``v`` set for every given vertex."""
    return reduce(or_, (1 << int(v) for v in vertices), 0)


def members(mask: int) -> list[int]:
    """Vertices of a bitset in increasing order."""
    if mask == 0:
        return []
    raw = np.frombuffer(mask.to_bytes((mask.bit_length() + 7) // 8, "little"), np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little")).tolist()


class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    def __init__(self, matrix: np.ndarray):
        matrix = np.array(matrix, dtype=bool, copy=True)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise InvalidInputException(f"Adjacency must be square, got {matrix.shape}")
        if matrix.diagonal().any():
            raise InvalidInputException("Self-loops are not allowed")
        if not np.array_equal(matrix, matrix.T):
            raise InvalidInputException("Adjacency must be symmetric")
        matrix.setflags(write=False)
        self._matrix = matrix
        self._rows: Optional[tuple[int, ...]] = None
        self._edge_count = int(matrix.sum()) // 2

    @property
    def n(self) -> int:
        return self._matrix.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def rows(self) -> tuple[int, ...]:
        """Neighbourhood bitsets, computed on first use."""
        if self._rows is None:
            packed = np.packbits(self._matrix, axis=1, bitorder="little")
            self._rows = tuple(int.from_bytes(r.tobytes(), "little") for r in packed)
        return self._rows

    @property
    def edge_count(self) -> int:
        return self._edge_count

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._matrix[u, v])

    def neighbors(self, v: int) -> VertexSet:
        return frozenset(np.flatnonzero(self._matrix[v]).tolist())

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def max_degree(self) -> int:
        return int(self._matrix.sum(axis=1).max()) if self.n else 0

    def degree_into_mask(self, v: int, mask: int) -> int:
        return (self.rows[v] & mask).bit_count()

    def edges(self) -> list[tuple[int, int]]:
        us, vs = np.nonzero(np.triu(self._matrix, k=1))
        return list(zip(us.tolist(), vs.tolist()))

    def density(self) -> float:
        pairs = self.n * (self.n - 1) // 2
        return self._edge_count / pairs if pairs else 0.0

    def check_vertices(self, vertices: Iterable[int]) -> VertexSet:
        try:
            s = frozenset(index(v) for v in vertices)
        except TypeError as e:
            raise InvalidInputException(f"Vertices must be integers: {e}") from e
        bad = [v for v in s if not 0 <= v < self.n]
        if bad:
            raise InvalidInputException(
                f"Vertices {sorted(bad)[:5]} are outside 0..{self.n - 1}"
            )
        return s

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges())
        return graph

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        """Relabels nodes ``0..n-1`` in sorted order."""
        order = sorted(graph.nodes())
        relabel = {node: i for i, node in enumerate(order)}
        edges = [(relabel[u], relabel[v]) for u, v in graph.edges()]
        return build_graph(len(order), edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self._matrix, other._matrix)

    __hash__ = None

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count})"


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Graph on ``n`` vertices with the de-duplicated given edges."""
    if n < 0:
        raise InvalidInputException(f"Vertex count must be non-negative, got {n}")
    matrix = np.zeros((n, n), dtype=bool)
    for pair in edges:
        if len(pair) != 2:
            raise InvalidInputException(f"Edge {pair!r} is not a vertex pair")
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidInputException(f"Edge ({u}, {v}) is outside 0..{n - 1}")
        if u == v:
            raise InvalidInputException(f"Self-loop at vertex {u}")
        matrix[u, v] = matrix[v, u] = True
    return Graph(matrix)


def complement(g: Graph) -> Graph:
    matrix = ~g.matrix
    np.fill_diagonal(matrix, False)
    return Graph(matrix)


def induced(g: Graph, s: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on ``s``; vertex ``i`` of the result is ``mapping[i]`` in g."""
    mapping = tuple(sorted(g.check_vertices(s)))
    idx = np.asarray(mapping, dtype=np.intp)
    return Graph(g.matrix[np.ix_(idx, idx)]), mapping


def crossing_status(g: Graph, a: Iterable[int], b: Iterable[int]) -> CrossingStatus:
    """Whether ``a`` is complete to, anticomplete to, or mixed with ``b``."""
    a, b = g.check_vertices(a), g.check_vertices(b)
    if not a or not b:
        raise PreconditionViolationException("crossing_status needs non-empty sets")
    if a & b:
        raise PreconditionViolationException(
            f"crossing_status needs disjoint sets, both contain {sorted(a & b)[:5]}"
        )
    block = g.matrix[np.ix_(sorted(a), sorted(b))]
    if block.all():
        return CrossingStatus.COMPLETE
    if not block.any():
        return CrossingStatus.EMPTY
    return CrossingStatus.MIXED


def degree_into(g: Graph, v: int, s: Iterable[int]) -> int:
    """``|N(v) & s|``."""
    g.check_vertices([v])
    return g.degree_into_mask(v, mask_of(g.check_vertices(s)))


def max_degree_of(g: Graph, s: Iterable[int]) -> int:
    """Maximum degree of ``g[s]``."""
    s = sorted(g.check_vertices(s))
    if not s:
        return 0
    idx = np.asarray(s, dtype=np.intp)
    return int(g.matrix[np.ix_(idx, idx)].sum(axis=1).max())
