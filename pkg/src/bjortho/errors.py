"""Exception types shared by every module."""


class BJError(Exception):
    """Base class for all errors raised by bjortho."""


class InputError(BJError, ValueError):
    """Malformed or out-of-contract input (dimension mismatch, zero vector, ...)."""


class UnsupportedInstance(BJError):
    """The instance is well formed but outside what a procedure can decide."""


class CounterexampleError(BJError):
    """A counterexample construction was rejected or failed its own verification."""


class ConditionViolation(CounterexampleError):
    """A hypothesis of the construction fails for the supplied data."""
