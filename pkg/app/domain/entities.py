from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterator, Optional, Union

from app.domain.graph import CrossingStatus, Graph, VertexSet
from app.domain.poset import Poset


class CertificateKind(str, Enum):
    """Relation between every pair of blocks."""

    COMPLETE = "complete"
    EMPTY = "empty"

    @property
    def crossing(self) -> CrossingStatus:
        return CrossingStatus(self.value)

    def flipped(self) -> "CertificateKind":
        if self is CertificateKind.COMPLETE:
            return CertificateKind.EMPTY
        return CertificateKind.COMPLETE


@dataclass(frozen=True)
class BlockCertificate:
    """t disjoint blocks, pairwise complete or pairwise anticomplete."""

    kind: CertificateKind
    blocks: tuple[VertexSet, ...]
    exponent: float
    host_n: int

    @property
    def t(self) -> int:
        return len(self.blocks)

    @property
    def min_block(self) -> int:
        return min((len(b) for b in self.blocks), default=0)

    def relabeled(self, kind: CertificateKind) -> "BlockCertificate":
        return BlockCertificate(kind, self.blocks, self.exponent, self.host_n)

    def with_exponent(self, exponent: float) -> "BlockCertificate":
        return BlockCertificate(self.kind, self.blocks, exponent, self.host_n)

    def lifted(self, mapping: tuple[int, ...], host_n: int) -> "BlockCertificate":
        """Blocks translated through ``mapping`` into a host on ``host_n`` vertices."""
        blocks = tuple(frozenset(mapping[v] for v in b) for b in self.blocks)
        return BlockCertificate(self.kind, blocks, self.exponent, host_n)


class ValidationCheck(str, Enum):
    BLOCK_COUNT = "block_count"
    NON_EMPTY = "non_empty"
    RANGE = "range"
    DISJOINTNESS = "disjointness"
    CROSSING = "crossing"
    EXPONENT = "exponent"
    HOST_SIZE = "host_size"


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    failed_check: Optional[ValidationCheck] = None
    message: str = "ok"

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class SparseCase:
    """A below B in the linear extension, with few comparabilities across."""

    a: VertexSet
    b: VertexSet


@dataclass(frozen=True)
class SplitCase:
    """Two sets with no comparability between them."""

    x1: VertexSet
    x2: VertexSet


SparseOrSplit = Union[SparseCase, SplitCase]


@dataclass(frozen=True)
class SeparatorResult:
    separator: VertexSet
    components: tuple[VertexSet, ...]


@dataclass(frozen=True)
class RamseyResult:
    """A clique and an independent set; exact maxima when ``exact`` is set.

    Results read off a cotree keep it in ``cotree``.
    """

    clique: VertexSet
    independent: VertexSet
    exact: bool = False
    cotree: Optional["CotreeNode"] = field(default=None, compare=False, repr=False)

    @property
    def best(self) -> VertexSet:
        if len(self.clique) >= len(self.independent):
            return self.clique
        return self.independent

    @property
    def best_is_clique(self) -> bool:
        return len(self.clique) >= len(self.independent)


class CotreeKind(str, Enum):
    JOIN = "join"
    UNION = "union"
    LEAF = "leaf"

    @classmethod
    def for_certificate(cls, kind: CertificateKind) -> "CotreeKind":
        return cls.JOIN if kind is CertificateKind.COMPLETE else cls.UNION


@dataclass
class CotreeNode:
    """Join/union tree whose leaves hold disjoint host vertex sets."""

    kind: CotreeKind
    vertices: VertexSet = frozenset()
    children: list["CotreeNode"] = field(default_factory=list)

    @classmethod
    def leaf(cls, vertices) -> "CotreeNode":
        return cls(CotreeKind.LEAF, frozenset(vertices))

    @classmethod
    def join(cls, *children: "CotreeNode") -> "CotreeNode":
        return cls(CotreeKind.JOIN, children=list(children))

    @classmethod
    def union(cls, *children: "CotreeNode") -> "CotreeNode":
        return cls(CotreeKind.UNION, children=list(children))

    @property
    def is_leaf(self) -> bool:
        return self.kind is CotreeKind.LEAF

    def leaves(self) -> Iterator["CotreeNode"]:
        stack = [self]
        while stack:
            node = stack.pop()
            if node.is_leaf:
                yield node
            else:
                stack.extend(reversed(node.children))

    def leaf_count(self) -> int:
        return sum(1 for _ in self.leaves())

    def covered(self) -> VertexSet:
        return frozenset().union(*(leaf.vertices for leaf in self.leaves()))


@dataclass(frozen=True)
class OracleInput:
    """Sub-instance handed to a block oracle, with its witness if one is known."""

    graph: Graph
    witness: Optional[Poset] = None
    mapping: tuple[int, ...] = ()


@dataclass
class RunRecord:
    """One pipeline invocation as persisted by ``bench``."""

    family: str
    n: int
    seed: int
    input_digest: str
    branch: str
    t: int
    min_block: int
    c: float
    clique_or_indep_size: int
    runtime_ms: float
    certificate_valid: bool
    homogeneous_valid: bool
    config: dict[str, Any] = field(default_factory=dict)
    certificate: dict[str, Any] = field(default_factory=dict)
