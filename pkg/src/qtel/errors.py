"""Exception types shared across the package."""


class QtelError(Exception):
    """Base class for all package-specific errors."""


class ShapeError(QtelError, ValueError):
    """Operands have incompatible or unexpected dimensions."""


class ValidationError(QtelError, ValueError):
    """An input object violates a stated invariant (e.g. normalization)."""


class DomainError(QtelError, ValueError):
    """An index or parameter lies outside its allowed range."""


class ResourceLimitError(QtelError, ValueError):
    """An exhaustive computation was requested beyond its supported size."""


class InternalConsistencyError(QtelError, RuntimeError):
    """A quantity the theory guarantees failed its numerical check."""
