"""Refinement of a graph into a cotree from block certificates.

Starting from one leaf holding every vertex, each leaf with at least two
vertices is replaced by the blocks of a certificate for its induced
subgraph, under a join node (pairwise complete blocks) or a union node
(pairwise anticomplete blocks). Vertices outside the blocks are dropped.
Every replacement keeps ``sum(|leaf| ** c)`` from decreasing, so the final
tree has at least ``n ** c`` singleton leaves.
"""

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Any, Optional, Union

from app.application.certificates import validate_certificate
from app.application.ramsey import is_clique, is_independent
from app.core.logger import logger
from app.domain.entities import (
    BlockCertificate,
    CertificateKind,
    CotreeKind,
    CotreeNode,
    OracleInput,
    RamseyResult,
)
from app.domain.graph import (
    CrossingStatus,
    Graph,
    VertexSet,
    crossing_status,
    induced,
)
from app.domain.interfaces import BlockOracle
from app.domain.poset import Poset, restrict
from app.infrastructure.exceptions import (
    AlgorithmInvariantException,
    OracleContractException,
    PreconditionViolationException,
)

POTENTIAL_TOLERANCE = 1e-12


@dataclass
class Cotree:
    """Cotree of a refinement run together with its bookkeeping."""

    root: CotreeNode
    host_n: int
    exponent: float
    potentials: list[float] = field(default_factory=list)
    discarded: VertexSet = frozenset()

    def leaf_count(self) -> int:
        return self.root.leaf_count()


def serialize_instance(g: Graph, mapping: tuple[int, ...]) -> dict[str, Any]:
    return {"n": g.n, "edges": [list(e) for e in g.edges()], "mapping": list(mapping)}


def qeh_recursion(
    g: Graph, oracle: BlockOracle, c: float, witness: Optional[Poset] = None
) -> Cotree:
    """Refine ``g`` with ``oracle`` until every leaf is a single vertex.

    The largest leaf is refined first. ``witness``, when given, is restricted
    to each queried vertex set and handed to the oracle.
    """
    root = CotreeNode.leaf(range(g.n))
    tree = Cotree(root=root, host_n=g.n, exponent=c)
    potential = float(g.n) ** c if g.n else 0.0
    tree.potentials.append(potential)
    counter = itertools.count()
    pending: list[tuple[int, int, int, CotreeNode]] = []
    if g.n >= 2:
        heapq.heappush(pending, (-g.n, 0, next(counter), root))
    discarded: set[int] = set()

    while pending:
        _, _, _, node = heapq.heappop(pending)
        sub, mapping = induced(g, node.vertices)
        sub_witness = restrict(witness, mapping)[0] if witness is not None else None
        cert = oracle.certify(OracleInput(sub, sub_witness, mapping))
        _check_oracle_certificate(sub, mapping, cert, c)

        blocks = [frozenset(mapping[v] for v in block) for block in cert.blocks]
        before = len(node.vertices) ** c
        after = sum(len(block) ** c for block in blocks)
        if after < before * (1 - POTENTIAL_TOLERANCE):
            raise AlgorithmInvariantException(
                f"Potential dropped from {before:.6g} to {after:.6g} refining "
                f"{len(node.vertices)} vertices"
            )
        potential += after - before
        tree.potentials.append(potential)
        kept = frozenset().union(*blocks)
        discarded |= node.vertices - kept

        node.kind = CotreeKind.for_certificate(cert.kind)
        node.vertices = frozenset()
        node.children = [CotreeNode.leaf(block) for block in blocks]
        for child in node.children:
            if len(child.vertices) >= 2:
                key = (-len(child.vertices), min(child.vertices), next(counter))
                heapq.heappush(pending, (*key, child))
        logger.debug(
            f"Refined {len(mapping)} vertices into {cert.t} {cert.kind.value} blocks, "
            f"potential {potential:.6g}"
        )

    tree.discarded = frozenset(discarded)
    if g.n and tree.leaf_count() < float(g.n) ** c * (1 - POTENTIAL_TOLERANCE):
        raise AlgorithmInvariantException(
            f"Cotree has {tree.leaf_count()} leaves, fewer than n^c = {g.n ** c:.6g}"
        )
    return tree


def _check_oracle_certificate(
    sub: Graph, mapping: tuple[int, ...], cert: BlockCertificate, c: float
) -> None:
    report = validate_certificate(sub, cert)
    message = report.message
    if report.passed and cert.exponent < c:
        message = f"certificate exponent {cert.exponent:.6g} is below {c:.6g}"
    elif report.passed:
        return
    logger.error(f"Oracle contract violated on {len(mapping)} vertices: {message}")
    raise OracleContractException(
        f"Block oracle returned an invalid certificate: {message}",
        report,
        instance=serialize_instance(sub, mapping),
    )


def _root(tree: Union[Cotree, CotreeNode]) -> CotreeNode:
    return tree.root if isinstance(tree, Cotree) else tree


def _dp(root: CotreeNode) -> tuple[list[int], list[int]]:
    """Maximum clique and independent set of the cograph, bottom-up."""
    results: dict[int, tuple[list[int], list[int]]] = {}
    stack: list[tuple[CotreeNode, bool]] = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if node.is_leaf:
            if len(node.vertices) != 1:
                raise PreconditionViolationException(
                    f"Cotree leaf holds {len(node.vertices)} vertices, expected 1"
                )
            v = next(iter(node.vertices))
            results[id(node)] = ([v], [v])
        elif not expanded:
            stack.append((node, True))
            stack.extend((child, False) for child in node.children)
        else:
            parts = [results.pop(id(child)) for child in node.children]
            summed = 0 if node.kind is CotreeKind.JOIN else 1
            total = [v for part in parts for v in part[summed]]
            best = max((part[1 - summed] for part in parts), key=len, default=[])
            if node.kind is CotreeKind.JOIN:
                results[id(node)] = (total, best)
            else:
                results[id(node)] = (best, total)
    return results[id(root)]


def cotree_max_clique(tree: Union[Cotree, CotreeNode]) -> VertexSet:
    return frozenset(_dp(_root(tree))[0])


def cotree_max_independent(tree: Union[Cotree, CotreeNode]) -> VertexSet:
    return frozenset(_dp(_root(tree))[1])


def check_cotree_semantics(g: Graph, tree: Union[Cotree, CotreeNode]) -> bool:
    """Children are pairwise complete under joins and anticomplete under unions."""
    stack = [_root(tree)]
    while stack:
        node = stack.pop()
        if node.is_leaf:
            continue
        expected = CrossingStatus.EMPTY
        if node.kind is CotreeKind.JOIN:
            expected = CrossingStatus.COMPLETE
        covers = [child.covered() for child in node.children]
        for first, second in itertools.combinations(covers, 2):
            if first and second and crossing_status(g, first, second) != expected:
                return False
        stack.extend(node.children)
    return True


def homogeneous_from_certificates(
    g: Graph,
    oracle: BlockOracle,
    c: float,
    witness: Optional[Poset] = None,
    check_semantics: bool = False,
) -> RamseyResult:
    """Clique and independent set of size product at least ``n ** c``."""
    if g.n == 0:
        return RamseyResult(frozenset(), frozenset(), cotree=CotreeNode.union())
    tree = qeh_recursion(g, oracle, c, witness)
    if check_semantics and not check_cotree_semantics(g, tree):
        raise AlgorithmInvariantException("Cotree labels disagree with the graph")
    clique, independent = _dp(tree.root)
    leaves = tree.leaf_count()
    if len(clique) * len(independent) < leaves:
        raise AlgorithmInvariantException(
            f"omega * alpha = {len(clique)} * {len(independent)} < {leaves} leaves"
        )
    result = RamseyResult(frozenset(clique), frozenset(independent), cotree=tree.root)
    if not is_clique(g, result.clique) or not is_independent(g, result.independent):
        raise AlgorithmInvariantException("Cotree DP returned a non-homogeneous set")
    bound = float(g.n) ** (c / 2)
    if len(result.best) < bound * (1 - POTENTIAL_TOLERANCE):
        raise AlgorithmInvariantException(
            f"Homogeneous set of size {len(result.best)} is below n^(c/2) = {bound:.6g}"
        )
    logger.info(
        f"Homogeneous sets for n={g.n}: clique {len(result.clique)}, "
        f"independent {len(result.independent)} from {leaves} leaves"
    )
    return result


class SingletonOracle(BlockOracle):
    """Toy oracle: singleton blocks for complete or edgeless graphs.

    Any other graph gets its first edge as two singleton blocks, which is a
    valid certificate only while ``2 >= n ** exponent``.
    """

    def __init__(self, exponent: float = 1.0):
        self._exponent = exponent

    @property
    def exponent(self) -> float:
        return self._exponent

    def certify(self, instance: OracleInput) -> BlockCertificate:
        g = instance.graph
        singletons = tuple(frozenset([v]) for v in range(g.n))
        if g.edge_count == g.n * (g.n - 1) // 2:
            kind = CertificateKind.COMPLETE
        elif g.edge_count == 0:
            kind = CertificateKind.EMPTY
        else:
            u, v = g.edges()[0]
            kind = CertificateKind.COMPLETE
            singletons = (frozenset([u]), frozenset([v]))
        return BlockCertificate(kind, singletons, self._exponent, g.n)
