"""Exception types shared across the package."""


class RLWError(Exception):
    """Base class for library errors."""


class NoFractions(RLWError):
    """The semiring cannot invert a nonzero natural number."""


class MarginalMismatch(RLWError):
    """Marginals handed to a splitting routine do not have equal totals."""


class UnboundScalarLiteral(RLWError):
    """A scalar literal is not a value of the active semiring."""


class TermSyntaxError(RLWError, ValueError):
    """Parse failure, carrying the character offset where it happened."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NotPure(RLWError):
    """A pure lambda-term was required but the term uses 0, scalars or sums."""


class NotNormal(RLWError):
    """A normal resource term was required but the argument has a redex."""


class CapExceeded(RLWError):
    """The input is too large for an exhaustive enumeration."""


class SuiteUnknown(RLWError):
    """No verification suite has the requested name."""
