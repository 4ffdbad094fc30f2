import json
from pathlib import Path
from typing import List

import pandas as pd

from app.domain.entities import RunRecord
from app.domain.interfaces import RunRecordRepository
from app.infrastructure.io.schemas import RunRecordSchema

# flat columns written by the CSV repository, in order
CSV_COLUMNS = [
    "family",
    "n",
    "seed",
    "input_digest",
    "branch",
    "t",
    "min_block",
    "c",
    "clique_or_indep_size",
    "runtime_ms",
    "certificate_valid",
    "homogeneous_valid",
]
NESTED_COLUMNS = ["config", "certificate"]


def records_frame(records: List[RunRecord]) -> pd.DataFrame:
    """Records as a table sorted by ``(n, seed)``; nested fields become JSON text."""
    rows = []
    for record in records:
        row = RunRecordSchema.from_entity(record).model_dump()
        for column in NESTED_COLUMNS:
            row[column] = json.dumps(row[column], sort_keys=True)
        rows.append(row)
    frame = pd.DataFrame(rows, columns=CSV_COLUMNS + NESTED_COLUMNS)
    return frame.sort_values(["n", "seed"], kind="stable").reset_index(drop=True)


class InMemoryRunRecordRepository(RunRecordRepository):
    """In-memory implementation of RunRecordRepository."""

    def __init__(self):
        self.records: List[RunRecord] = []

    def add(self, record: RunRecord) -> RunRecord:
        self.records.append(record)
        return record

    def add_all(self, records: List[RunRecord]) -> List[RunRecord]:
        self.records.extend(records)
        return records

    def get_all(self) -> List[RunRecord]:
        return list(self.records)


class CsvRunRecordRepository(RunRecordRepository):
    """pandas CSV implementation of RunRecordRepository."""

    def __init__(self, path: Path):
        self.path = Path(path)

    def add(self, record: RunRecord) -> RunRecord:
        self.add_all([record])
        return record

    def add_all(self, records: List[RunRecord]) -> List[RunRecord]:
        frame = records_frame(self.get_all() + list(records))
        self.path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(self.path, index=False)
        return records

    def get_all(self) -> List[RunRecord]:
        if not self.path.exists():
            return []
        frame = pd.read_csv(self.path, dtype={"input_digest": str, "branch": str})
        records = []
        for row in frame.to_dict(orient="records"):
            for column in NESTED_COLUMNS:
                row[column] = json.loads(row[column])
            records.append(RunRecordSchema.model_validate(row).to_entity())
        return records


class JsonLinesRunRecordRepository(RunRecordRepository):
    """JSON-lines implementation of RunRecordRepository."""

    def __init__(self, path: Path):
        self.path = Path(path)

    def add(self, record: RunRecord) -> RunRecord:
        self.add_all([record])
        return record

    def add_all(self, records: List[RunRecord]) -> List[RunRecord]:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a", encoding="utf-8") as f:
            for record in records:
                f.write(RunRecordSchema.from_entity(record).model_dump_json() + "\n")
        return records

    def get_all(self) -> List[RunRecord]:
        if not self.path.exists():
            return []
        with self.path.open(encoding="utf-8") as f:
            return [
                RunRecordSchema.model_validate_json(line).to_entity()
                for line in f
                if line.strip()
            ]
