"""Custom exceptions for the toolkit."""

from typing import Any, Optional, Sequence


class EHToolkitException(Exception):
    """Base exception for toolkit errors."""

    exit_code: int = 1


class InvalidInputException(EHToolkitException):
    """Exception raised for malformed graphs, posets, curves or files."""

    exit_code = 2


class CycleDetectedException(InvalidInputException):
    """Exception raised when order relations contain a cycle."""

    def __init__(self, cycle: Sequence[int]):
        self.cycle = list(cycle)
        path = " -> ".join(str(v) for v in [*self.cycle, self.cycle[0]])
        super().__init__(f"Relations are cyclic: {path}")


class CoordinateBoundException(InvalidInputException):
    """Exception raised when a curve coordinate exceeds the magnitude bound."""

    pass


class PreconditionViolationException(EHToolkitException):
    """Exception raised when an operation's precondition does not hold."""

    exit_code = 2


class WitnessMismatchException(PreconditionViolationException):
    """Exception raised when a poset does not witness the given graph."""

    pass


class ExactCapExceededException(PreconditionViolationException):
    """Exception raised when an exact search is asked for too large an input."""

    pass


class CertificateValidationException(EHToolkitException):
    """Exception raised when a block certificate fails validation."""

    exit_code = 1

    def __init__(self, message: str, report: Optional[Any] = None):
        self.report = report
        super().__init__(message)


class OracleContractException(CertificateValidationException):
    """Exception raised when a block oracle returns an invalid certificate."""

    def __init__(self, message: str, report: Optional[Any] = None, instance=None):
        self.instance = instance
        super().__init__(message, report)


class OracleRequiredException(EHToolkitException):
    """Exception raised when a dense instance needs an external witness oracle."""

    exit_code = 3


class RetryCapExhaustedException(EHToolkitException):
    """Exception raised when Case-1 sampling runs out of retries."""

    exit_code = 4


class AlgorithmInvariantException(EHToolkitException):
    """Exception raised when an internal algorithm property is violated."""

    exit_code = 1


class CaseOneShortfallException(AlgorithmInvariantException):
    """Exception raised when a Case-1 emission misses its block bound."""

    pass


class SeparatorNotFoundException(EHToolkitException):
    """Exception raised when the greedy separator exceeds its budget."""

    exit_code = 1


class SeparatorSplitException(EHToolkitException):
    """Exception raised when separator components cannot form two balanced sides."""

    exit_code = 1
