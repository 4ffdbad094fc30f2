"""Readers and writers for instance, certificate and result files."""

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Optional, Union

import pandas as pd
from pydantic import BaseModel, ValidationError

from app.core.logger import logger
from app.domain.entities import BlockCertificate, CotreeNode, RamseyResult
from app.domain.geometry import CurveFamily, intersection_graph
from app.domain.graph import Graph, build_graph
from app.domain.poset import Poset, incomparability_graph
from app.infrastructure.exceptions import InvalidInputException
from app.infrastructure.io.schemas import (
    CertificateSchema,
    CotreeSchema,
    CurvesSchema,
    GraphSchema,
    PosetSchema,
    VerdictSchema,
)

EDGE_LIST_SUFFIXES = {".txt", ".edges", ".el"}
PathLike = Union[str, Path]


class InstanceKind(str, Enum):
    GRAPH = "graph"
    POSET = "poset"
    CURVES = "curves"


@dataclass(frozen=True)
class Instance:
    """A loaded input together with the graph every command works on.

    Posets stand for their incomparability graph and curves for their
    intersection graph.
    """

    kind: InstanceKind
    graph: Graph
    poset: Optional[Poset] = None
    curves: Optional[CurveFamily] = None


def read_text(path: PathLike) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InvalidInputException(f"Cannot read {path}: {e.strerror}") from e


def write_text(path: PathLike, text: str) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(text, encoding="utf-8")
    logger.debug(f"Wrote {len(text)} characters to {path}")


def read_json(path: PathLike) -> dict:
    try:
        data = json.loads(read_text(path))
    except json.JSONDecodeError as e:
        raise InvalidInputException(f"{path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise InvalidInputException(f"{path} must hold a JSON object")
    return data


def _parse(schema: type[BaseModel], data: dict, source: PathLike):
    try:
        return schema.model_validate(data)
    except ValidationError as e:
        raise InvalidInputException(f"{source}: {e}") from e


def parse_edge_list(text: str) -> Graph:
    """``n m`` on the first data line, then ``m`` lines ``u v``; ``#`` comments.

    A header with ``n`` alone leaves the edge count unchecked.
    """
    lines = [line.split("#", 1)[0].split() for line in text.splitlines()]
    lines = [line for line in lines if line]
    if not lines or len(lines[0]) not in (1, 2):
        raise InvalidInputException("Edge list must start with 'n m'")
    try:
        n = int(lines[0][0])
        m = int(lines[0][1]) if len(lines[0]) == 2 else None
        edges = [(int(u), int(v)) for u, v in lines[1:]]
    except ValueError as e:
        raise InvalidInputException(f"Malformed edge list: {e}") from e
    if m is not None and m != len(edges):
        raise InvalidInputException(
            f"Edge list header announces {m} edges, found {len(edges)}"
        )
    return build_graph(n, edges)


def format_edge_list(g: Graph) -> str:
    edges = g.edges()
    return "\n".join([f"{g.n} {len(edges)}", *(f"{u} {v}" for u, v in edges)]) + "\n"


def detect_kind(data: dict) -> InstanceKind:
    if "curves" in data:
        return InstanceKind.CURVES
    if "relations" in data:
        return InstanceKind.POSET
    if "edges" in data:
        return InstanceKind.GRAPH
    raise InvalidInputException(
        f"Cannot tell the instance type from keys {sorted(data)[:5]}"
    )


def load_instance(path: PathLike, kind: Optional[InstanceKind] = None) -> Instance:
    if Path(path).suffix in EDGE_LIST_SUFFIXES:
        if kind not in (None, InstanceKind.GRAPH):
            raise InvalidInputException(f"{path} is an edge list, not a {kind.value}")
        return Instance(InstanceKind.GRAPH, parse_edge_list(read_text(path)))
    data = read_json(path)
    found = detect_kind(data)
    if kind is not None and kind is not found:
        raise InvalidInputException(f"{path} holds a {found.value}, not a {kind.value}")
    if found is InstanceKind.CURVES:
        curves = _parse(CurvesSchema, data, path).to_entity()
        return Instance(found, intersection_graph(curves), curves=curves)
    if found is InstanceKind.POSET:
        poset = _parse(PosetSchema, data, path).to_entity()
        return Instance(found, incomparability_graph(poset), poset=poset)
    return Instance(found, _parse(GraphSchema, data, path).to_entity())


def load_poset(path: PathLike) -> Poset:
    instance = load_instance(path, InstanceKind.POSET)
    return instance.poset


def load_certificate(path: PathLike) -> BlockCertificate:
    """A certificate file, or the ``certificate`` field of an extract report."""
    data = read_json(path)
    if isinstance(data.get("certificate"), dict):
        data = data["certificate"]
    return _parse(CertificateSchema, data, path).to_entity()


def load_cotree(path: PathLike) -> CotreeNode:
    return _parse(CotreeSchema, read_json(path), path).to_entity()


def to_json(model: BaseModel) -> str:
    return model.model_dump_json(indent=2) + "\n"


def certificate_frame(cert: BlockCertificate) -> pd.DataFrame:
    rows = [
        {"block": i, "vertex": v}
        for i, block in enumerate(cert.blocks)
        for v in sorted(block)
    ]
    return pd.DataFrame(rows, columns=["block", "vertex"])


def ramsey_frame(result: RamseyResult) -> pd.DataFrame:
    rows = [{"set": "clique", "vertex": v} for v in sorted(result.clique)]
    rows += [{"set": "independent", "vertex": v} for v in sorted(result.independent)]
    return pd.DataFrame(rows, columns=["set", "vertex"])


def poset_frame(p: PosetSchema) -> pd.DataFrame:
    return pd.DataFrame(p.relations, columns=["lower", "upper"])


def curves_frame(c: CurveFamily) -> pd.DataFrame:
    rows = [
        {"curve": i, "point": j, "x": x, "y": y}
        for i, curve in enumerate(c.curves)
        for j, (x, y) in enumerate(curve)
    ]
    return pd.DataFrame(rows, columns=["curve", "point", "x", "y"])


def to_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False)


def verdict_frame(verdict: VerdictSchema) -> pd.DataFrame:
    columns = list(VerdictSchema.model_fields)
    return pd.DataFrame([verdict.model_dump()], columns=columns)
