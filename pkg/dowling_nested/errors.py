"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class DowlingError(Exception):
    """Base class for every error raised by dowling_nested."""


class InvalidOrderError(DowlingError, ValueError):
    pass


class AxiomViolationError(DowlingError, ValueError):
    """A multiplication table fails a group axiom."""

    def __init__(self, axiom: str, witness: tuple):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"group axiom '{axiom}' fails at {witness}")


class SymmetryError(DowlingError, ValueError):
    pass


class StructureError(DowlingError, ValueError):
    pass


class IncompatibilityError(DowlingError, ValueError):
    pass


class ResourceCapError(DowlingError):
    """Projected object size exceeds the configured cap."""

    def __init__(self, what: str, projected: int, cap: int):
        self.what = what
        self.projected = projected
        self.cap = cap
        super().__init__(f"{what}: projected {projected} elements exceeds cap {cap}")


class DomainError(DowlingError, ValueError):
    pass


class LabelError(DowlingError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown label"


class FaceError(DowlingError, ValueError):
    pass


class NotPureError(DowlingError, ValueError):
    pass


class NotNestedError(DowlingError, ValueError):
    pass


class TreeValidationError(DowlingError, ValueError):
    def __init__(self, violations: list):
        self.violations = list(violations)
        detail = "; ".join(f"({v.condition}) {v.message}" for v in self.violations)
        super().__init__(f"invalid tree: {detail}")


class UsageError(DowlingError):
    pass
