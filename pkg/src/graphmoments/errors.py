"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed input text (edge lists, moment files); carries a line number when known."""


class ValidationError(ValueError):
    """Input violates a structural contract (self-loops, bad indices, size caps)."""


class DegenerateInputError(ValueError):
    """Input is structurally valid but the requested quantity is undefined for it."""


class ConsistencyError(RuntimeError):
    """An internal cross-check failed; indicates a bug, not bad input."""


class InfeasibleMomentsError(ValueError):
    """A supplied moment sequence is not the moment sequence of any measure."""
