"""Exception types raised by the library."""


class IntervalError(Exception):
    """Base class for all errors raised by intervalkit."""


class UndefinedOperation(IntervalError, ArithmeticError):
    """A directed endpoint kernel was asked for an undefined result (inf - inf, 0 * inf, ...)."""


class InvalidEndpoints(IntervalError, ValueError):
    """Endpoints that do not describe a valid interval."""


class InvalidLiteral(IntervalError, ValueError):
    """Text that does not parse as an interval literal."""


class PrecisionMismatch(IntervalError, TypeError):
    """Operands carry different endpoint formats and must be promoted first."""


class MalformedLine(IntervalError, ValueError):
    """A line of an interval-sequence file could not be parsed."""

    def __init__(self, lineno, text):
        super().__init__(f"line {lineno}: cannot parse interval {text!r}")
        self.lineno = lineno
        self.text = text


class ResourceLimit(IntervalError, RuntimeError):
    """A search exceeded its configured work limit."""
