"""Pydantic wire schemas for instances, certificates and results."""

from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from app.domain.entities import (
    BlockCertificate,
    CertificateKind,
    CotreeKind,
    CotreeNode,
    RamseyResult,
    RunRecord,
    ValidationReport,
)
from app.domain.geometry import CurveFamily
from app.domain.graph import Graph, build_graph
from app.domain.poset import Poset, cover_pairs, poset_from_relations


class GraphSchema(BaseModel):
    """Schema for a graph on vertices ``0..n-1``."""

    n: int = Field(..., ge=0, description="Number of vertices")
    edges: list[tuple[int, int]] = Field(default_factory=list)

    model_config = ConfigDict(
        json_schema_extra={"example": {"n": 3, "edges": [[0, 1], [1, 2]]}}
    )

    @classmethod
    def from_entity(cls, g: Graph) -> "GraphSchema":
        return cls(n=g.n, edges=g.edges())

    def to_entity(self) -> Graph:
        return build_graph(self.n, self.edges)


class PosetSchema(BaseModel):
    """Schema for a poset given by any generating set of relations."""

    n: int = Field(..., ge=0, description="Number of elements")
    relations: list[tuple[int, int]] = Field(
        default_factory=list, description="Pairs (x, y) meaning x below y"
    )

    model_config = ConfigDict(
        json_schema_extra={"example": {"n": 3, "relations": [[0, 1], [1, 2]]}}
    )

    @classmethod
    def from_entity(cls, p: Poset) -> "PosetSchema":
        return cls(n=p.n, relations=cover_pairs(p))

    def to_entity(self) -> Poset:
        return poset_from_relations(self.n, self.relations)


class CurvesSchema(BaseModel):
    """Schema for integer polylines."""

    curves: list[list[tuple[int, int]]]

    @classmethod
    def from_entity(cls, c: CurveFamily) -> "CurvesSchema":
        return cls(curves=[list(curve) for curve in c.curves])

    def to_entity(self) -> CurveFamily:
        return CurveFamily.of(self.curves)


class CertificateSchema(BaseModel):
    """Schema for a block certificate."""

    kind: CertificateKind
    t: int = Field(..., ge=0)
    c: float
    host_n: int = Field(..., ge=0)
    blocks: list[list[int]]

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "kind": "empty",
                "t": 2,
                "c": 0.05,
                "host_n": 4,
                "blocks": [[0, 1], [2, 3]],
            }
        }
    )

    @classmethod
    def from_entity(cls, cert: BlockCertificate) -> "CertificateSchema":
        return cls(
            kind=cert.kind,
            t=cert.t,
            c=cert.exponent,
            host_n=cert.host_n,
            blocks=[sorted(block) for block in cert.blocks],
        )

    def to_entity(self) -> BlockCertificate:
        return BlockCertificate(
            kind=self.kind,
            blocks=tuple(frozenset(block) for block in self.blocks),
            exponent=self.c,
            host_n=self.host_n,
        )


class VerdictSchema(BaseModel):
    passed: bool
    failed_check: Optional[str] = None
    message: str

    @classmethod
    def from_entity(cls, report: ValidationReport) -> "VerdictSchema":
        failed = report.failed_check.value if report.failed_check else None
        return cls(passed=report.passed, failed_check=failed, message=report.message)


class RamseyResultSchema(BaseModel):
    clique: list[int]
    independent: list[int]
    exact: bool = False
    best: Literal["clique", "independent"]

    @classmethod
    def from_entity(cls, result: RamseyResult) -> "RamseyResultSchema":
        return cls(
            clique=sorted(result.clique),
            independent=sorted(result.independent),
            exact=result.exact,
            best="clique" if result.best_is_clique else "independent",
        )


class CotreeSchema(BaseModel):
    kind: CotreeKind
    vertices: list[int] = Field(default_factory=list)
    children: list["CotreeSchema"] = Field(default_factory=list)

    @classmethod
    def from_entity(cls, node: CotreeNode) -> "CotreeSchema":
        return cls(
            kind=node.kind,
            vertices=sorted(node.vertices),
            children=[cls.from_entity(child) for child in node.children],
        )

    def to_entity(self) -> CotreeNode:
        return CotreeNode(
            self.kind,
            frozenset(self.vertices),
            [child.to_entity() for child in self.children],
        )


CotreeSchema.model_rebuild()


class RunRecordSchema(BaseModel):
    """Schema for one bench row."""

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
    config: dict[str, Any] = Field(default_factory=dict)
    certificate: dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def from_entity(cls, record: RunRecord) -> "RunRecordSchema":
        return cls(**vars(record))

    def to_entity(self) -> RunRecord:
        return RunRecord(**self.model_dump())


class ExtractionReportSchema(BaseModel):
    """Certificate emitted by ``extract`` with its validator verdict."""

    branch: str
    certificate: CertificateSchema
    verdict: VerdictSchema
