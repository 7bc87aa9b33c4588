"""Exception types shared across the package.

Every error raised on purpose derives from HodgedimError so callers (and the
CLI) can tell configuration mistakes from numerical failures.
"""


class HodgedimError(Exception):
    """Base class for all package errors."""


class InvalidFamilyError(HodgedimError):
    """Unknown family name or parameters outside the family's valid range."""


class SizeLimitError(HodgedimError):
    """A window construction would exceed the vertex cap."""


class InvalidWindowError(HodgedimError):
    """Window data violates the window contract (empty, disconnected, ...)."""


class IncompatibleDomainError(HodgedimError):
    """Operands live on different windows or arrays have the wrong shape."""


class MissingEdgeError(HodgedimError):
    """An oriented edge is not an edge of the window or family at hand."""


class IncompatibleRhsError(HodgedimError):
    """Right-hand side outside the operator's range (nonzero mean on a
    singular mode)."""


class SolverFailureError(HodgedimError):
    """Iteration cap hit before the residual target; carries the report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InsufficientWindowError(HodgedimError):
    """A check needs values outside the supplied window; nothing is silently
    truncated."""


class CutoffExceededError(HodgedimError):
    """A graph-distance query ran past its cutoff."""
