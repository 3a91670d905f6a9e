"""Exception types shared across the package."""


class CollatzError(ValueError):
    """Base class for every error raised by ringcollatz."""


class RingError(CollatzError):
    """Malformed ring description or element."""


class UnsupportedRing(CollatzError):
    """The operation is not defined for this kind of ring."""


class PreconditionError(CollatzError):
    """An input violates the documented hypothesis of an operation."""


class BudgetExceeded(CollatzError):
    """A search or enumeration would exceed its work budget."""
