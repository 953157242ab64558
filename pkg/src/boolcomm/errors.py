"""Exception hierarchy shared by every module."""


class BoolCommError(Exception):
    """Base class for all errors raised by boolcomm."""


class DomainError(BoolCommError, ValueError):
    """An argument lies outside the domain of the operation."""


class UnsupportedFunction(DomainError):
    """The operation has no construction for this kind of function."""


class SpecParseError(DomainError):
    """A function spec string could not be parsed.

    ``position`` is the 0-based character offset where parsing failed.
    """

    def __init__(self, message, text, position):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


class BudgetExceeded(BoolCommError):
    """An exhaustive enumeration would exceed the configured state-space cap."""


class DecodeError(BoolCommError):
    """A bit stream did not start with a valid codeword."""


class InvariantViolation(BoolCommError, AssertionError):
    """An internal consistency check failed (a bug, not a user error)."""


class DecodeMismatch(InvariantViolation):
    """A node reconstructed a function block different from the truth."""
