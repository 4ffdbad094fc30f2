from abc import ABC, abstractmethod
from typing import List

from app.domain.entities import BlockCertificate, OracleInput, RunRecord


class BlockOracle(ABC):
    """Abstract source of block certificates for induced sub-instances."""

    @property
    @abstractmethod
    def exponent(self) -> float:
        """Exponent every returned certificate is guaranteed to satisfy."""

    @abstractmethod
    def certify(self, instance: OracleInput) -> BlockCertificate:
        pass


class RunRecordRepository(ABC):
    """Abstract store for bench run records."""

    @abstractmethod
    def add(self, record: RunRecord) -> RunRecord:
        pass

    @abstractmethod
    def add_all(self, records: List[RunRecord]) -> List[RunRecord]:
        pass

    @abstractmethod
    def get_all(self) -> List[RunRecord]:
        pass
