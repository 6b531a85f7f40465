class KimuraError(Exception):
    """Base class for errors raised by this package."""


class PreconditionError(KimuraError, ValueError):
    """An operation was called on input outside its domain."""


class ProofViolation(KimuraError):
    """A step of the constructive normality argument produced an invalid result.

    This must never happen for valid input; seeing it means either a bug or a
    gap in the argument being replayed.
    """


class BudgetExceeded(KimuraError):
    """An enumeration would exceed its configured size budget."""
