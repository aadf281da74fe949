"""Exception hierarchy shared by every evokit module."""


class EvokitError(ValueError):
    """Base class for domain errors (reported with exit code 1 by the CLI)."""


class ParseError(EvokitError):
    """Malformed scalar, field, algebra, group or graph text."""


class NotIdempotentError(EvokitError):
    """The structure matrix is singular, so the algebra is not idempotent."""


class InvariantViolation(EvokitError):
    """An internal invariant that the theory guarantees did not hold."""


class CapExceededError(EvokitError):
    """A configured size cap (dimension, modulus, group order...) was exceeded."""
