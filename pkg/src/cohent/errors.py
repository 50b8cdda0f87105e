"""Exception hierarchy shared by all cohent modules."""


class CohentError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(CohentError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DegenerateStateError(CohentError):
    """The squared norm is numerically zero: the four components are dependent."""


class TruncationError(CohentError):
    """Fock-space truncation too small for the requested amplitude."""

    def __init__(self, message: str, tail_mass: float):
        super().__init__(message)
        self.tail_mass = tail_mass


class ConsistencyError(CohentError):
    """An internal cross-check failed (float noise beyond bug threshold)."""


class ScopeError(CohentError):
    """Request falls outside the scope of the classification theory (p1 != p2)."""


class InputFileError(CohentError):
    """A state or scan document could not be parsed."""


class GridSizeError(DomainError):
    """Requested scan grid exceeds the hard size limit."""
