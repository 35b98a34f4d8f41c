"""Exception hierarchy shared by all qmem modules."""


class QmemError(Exception):
    """Base class for all qmem errors."""


class ValidationError(QmemError, ValueError):
    """Raised when constructor arguments violate a documented invariant."""


class ContractViolationError(QmemError, ValueError):
    """Raised when a value passed between modules breaks its contract,
    e.g. a non-Hermitian matrix where a density matrix is required."""


class InternalConsistencyError(QmemError, RuntimeError):
    """Raised when an internal cross-check fails; signals a bug, not bad input."""
