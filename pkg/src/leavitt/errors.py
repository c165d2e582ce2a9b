"""Exception hierarchy.

Everything raised on bad user input (malformed files, unknown identifiers,
violated preconditions) derives from LeavittError so the CLI can map it to
a structured error report and exit code 2; anything else is a genuine bug.
"""


class LeavittError(Exception):
    """Base class for all user-facing errors."""


class GraphSyntaxError(LeavittError):
    """Malformed graph DSL source."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class ExpressionSyntaxError(LeavittError):
    """Malformed element expression."""


class DuplicateIdentifier(LeavittError):
    """Identifier declared twice in one graph."""


class UnknownIdentifier(LeavittError):
    """Reference to an undeclared vertex or edge."""


class GraphMismatch(LeavittError):
    """Operands attached to different graphs (or different fields)."""


class PreconditionError(LeavittError):
    """Operation called outside its stated domain."""


class NotGroupInvertible(LeavittError):
    """Matrix has no group inverse: rank(m^2) < rank(m)."""


class NotSquareCancellable(LeavittError):
    """Witness element b is not square-cancellable."""


class NotFoundWithinBounds(LeavittError):
    """Bounded exhaustive search exhausted without a witness."""
