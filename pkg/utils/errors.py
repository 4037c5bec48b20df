"""Exception hierarchy shared by every package.

Everything derives from ``ValueError`` so callers that only care about
"bad input" can keep catching that.
"""


class CendError(ValueError):
    """Base class for all domain errors."""

    exit_code = 1


class ParseError(CendError):
    """Text could not be parsed; ``column`` is 1-based."""

    exit_code = 2

    def __init__(self, message, column=None, text=None):
        self.column = column
        self.text = text
        if column is not None:
            message = f"{message} at column {column}"
        super().__init__(message)


class SizeMismatchError(CendError):
    exit_code = 2

    def __init__(self, left, right):
        self.left = left
        self.right = right
        super().__init__(f"size mismatch: {left} vs {right}")


class DegreeBoundError(CendError):
    """An element left the finite v-degree window of a span."""

    def __init__(self, message, element=None, bound=None):
        self.element = element
        self.bound = bound
        super().__init__(message)


class ModuleOverflowError(CendError):
    """Truncated module action went past its degree cap."""


class NotConformalError(CendError):
    """An operator sequence does not come from a bounded conformal element."""


class PreconditionError(CendError):
    def __init__(self, stage, relation, witness=None):
        self.stage = stage
        self.relation = relation
        self.witness = witness
        super().__init__(f"[{stage}] precondition failed: {relation}")


class UnitHypothesisError(PreconditionError):
    """C/R has no unit among the supplied data."""


class IterationCapError(CendError):
    def __init__(self, stage, cap):
        self.stage = stage
        self.cap = cap
        super().__init__(f"[{stage}] no convergence after {cap} iterations")


class VerificationError(CendError):
    def __init__(self, message, transcript=None):
        self.transcript = transcript
        super().__init__(message)


class FeasibleSystemError(CendError):
    """Raised when a system expected to be inconsistent has a solution."""
