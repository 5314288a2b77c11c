"""Exception hierarchy shared by all submult modules.

The CLI maps every SubmultError to exit code 2; verdicts (holds/refuted)
are never signalled by exceptions.
"""


class SubmultError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(SubmultError):
    """Caller violated a precondition (bad range, unknown name, arity...)."""


class DomainError(SubmultError):
    """Input outside the mathematical domain (n = 0, zero denominator...)."""


class ResourceError(SubmultError):
    """A configured resource bound was exceeded (sieve limit, digit budget).

    Raised before or instead of producing a result, never after a partial
    sweep: callers either get a complete report or this error.
    """


class UnsupportedInputError(UsageError):
    """Input is valid but outside what the operation can decide exactly
    (e.g. a non-integer exponent function in a power comparison)."""


class InvariantViolation(SubmultError):
    """A registered object failed one of its construction-time invariants."""


class InconsistencyError(SubmultError):
    """A local and a global verdict contradict a proved implication.

    This always indicates a bug in the implementation, not in the inputs.
    """
