"""Exception types and gate results shared across the package."""

from __future__ import annotations

from dataclasses import dataclass


class OrbitCohError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParam(OrbitCohError, ValueError):
    pass


class NotContained(OrbitCohError, ValueError):
    pass


class DegreeOverflow(OrbitCohError, ArithmeticError):
    pass


class UnsupportedFiber(OrbitCohError):
    pass


class UnsupportedInstance(OrbitCohError):
    pass


class WindowTooSmall(OrbitCohError):
    pass


class InvalidCase(OrbitCohError, ValueError):
    pass


class SearchLimitExceeded(OrbitCohError):
    pass


class DifferentialError(OrbitCohError):
    """A proposed differential is inconsistent; ``witness`` says where."""

    reason = "DifferentialError"

    def __init__(self, witness: str, bigrade: tuple[int, int] | None = None):
        super().__init__(witness)
        self.witness = witness
        self.bigrade = bigrade


class IllDefined(DifferentialError):
    reason = "IllDefined"


class NotSquareZero(DifferentialError):
    reason = "NotSquareZero"


class NoMatch(OrbitCohError):
    def __init__(self, report):
        super().__init__(report.diagnostic)
        self.report = report


@dataclass(frozen=True)
class GateResult:
    """Pass/fail outcome of a feasibility gate.

    ``degree`` is set when the failure is attached to a particular degree.
    """

    passed: bool
    reason: str = ""
    degree: int | None = None

    def __bool__(self) -> bool:
        return self.passed

    @classmethod
    def ok(cls) -> GateResult:
        return cls(True)

    @classmethod
    def fail(cls, reason: str, degree: int | None = None) -> GateResult:
        return cls(False, reason, degree)
