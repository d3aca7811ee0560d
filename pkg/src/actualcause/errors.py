"""Exception hierarchy.

Everything raised on purpose derives from CausalError so callers can
catch the package's failures with a single except clause.  Validation
problems carry the structured diagnostics that produced them.
"""

from __future__ import annotations


class CausalError(Exception):
    """Base class for all errors raised by this package."""


class InvalidModelError(CausalError):
    """A model failed validation; ``diagnostics`` lists every problem."""

    def __init__(self, message, diagnostics=()):
        super().__init__(message)
        self.diagnostics = tuple(diagnostics)


class UnknownVariableError(CausalError):
    """A formula or intervention mentions a variable the model lacks."""


class OutOfRangeError(CausalError):
    """A value used for a variable is not a member of its range.

    Raised (rather than returning false) so that callers can tell the
    undefined case apart from a formula that merely fails to hold.
    """


class InterventionError(CausalError):
    """An intervention targets something that cannot be intervened on."""


class ParseError(CausalError):
    """Raised by ``ParseResult.unwrap`` when parsing produced no model."""

    def __init__(self, message, diagnostics=()):
        super().__init__(message)
        self.diagnostics = tuple(diagnostics)


class UnknownModelError(CausalError):
    """A table-backed theory was queried with a model it has no entry for."""


class UnknownTheoryError(CausalError):
    """A theory name is not present in the registry."""


class ResourceLimitError(CausalError):
    """An enumeration would exceed the configured variable budget."""
