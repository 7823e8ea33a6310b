"""Exception hierarchy shared by all modules."""


class HypersliceError(Exception):
    """Base class for library errors."""


class InvalidQueryError(HypersliceError, ValueError):
    """A query whose arguments fall outside the operation's domain."""


class CapacityError(HypersliceError):
    """A construction would exceed the configured enumeration cap."""


class NotTightlyConnectedError(HypersliceError):
    """Two edges lie in different tight components."""


class TupleMismatchError(HypersliceError):
    """Walks cannot be concatenated because their end tuples differ."""


class WalkTotalError(HypersliceError):
    """Total walk length is not divisible by the uniformity."""


class BoundViolationError(HypersliceError):
    """A planner count exceeds the bound derived from its weight."""


class HypothesisViolatedError(HypersliceError):
    """A required hypothesis does not hold for the given input.

    ``condition`` names the violated condition, ``deficit`` (when set) is the
    exact amount by which it fails.
    """

    def __init__(self, message, condition=None, deficit=None):
        super().__init__(message)
        self.condition = condition
        self.deficit = deficit


class GreedyStuckError(HypersliceError):
    """Internal-consistency failure: a greedy step that must succeed did not."""


class ForeignSliceError(HypersliceError):
    """A slice does not belong to the family it was checked against."""


class UndefinedDensityError(HypersliceError):
    """A density whose normalising count is zero."""


class ParseError(HypersliceError):
    """Malformed ``.khg`` input; ``line`` is 1-based."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
