"""Exception types shared across the package."""


class PolyliftError(Exception):
    """Base class for all package errors."""


class InputError(PolyliftError, ValueError):
    """Malformed or dimensionally inconsistent input."""


class EmptyPolyhedronError(PolyliftError):
    """An operation requiring a nonempty polyhedron received an empty one."""


class UnboundedPolyhedronError(PolyliftError):
    """An operation requiring boundedness met an unbounded polyhedron."""


class SizeLimitError(PolyliftError):
    """A generator or search was asked to exceed its hard size guard."""


class ValidationError(PolyliftError):
    """Supplied data failed an exact consistency check (e.g. T*S != Phi)."""


class BudgetExceededError(PolyliftError):
    """An exact search ran out of its node budget before finishing."""


class InvariantViolationError(PolyliftError, RuntimeError):
    """An internal invariant failed; indicates a bug, not a legal outcome."""
