"""Exception types shared across the toolkit."""


class FdchkError(Exception):
    """Base class for all toolkit errors."""


class ParseError(FdchkError):
    """Expression text could not be parsed.

    Carries the byte offset of the failure and a description of what was
    expected there.
    """

    def __init__(self, position: int, expected: str):
        self.position = position
        self.expected = expected
        super().__init__(f"parse error at offset {position}: expected {expected}")


class UnboundVariable(FdchkError):
    """An expression referenced a variable missing from the bindings."""


class EvalError(FdchkError):
    """Expression evaluation left the real domain (log/sqrt of a negative
    number, division by zero, fractional power of a negative base)."""


class NonPositivePhi(FdchkError):
    """The weight function took a non-positive value at a sample point."""


class NonMonotone(FdchkError):
    """(s*phi(s))' was non-positive at a sample point (condition 2 violated)."""


class ExponentMismatch(FdchkError):
    """The near-zero growth ratio (s*phi(s))'/s^r varied by more than the
    allowed factor across (0, s0) (condition 4 violated)."""


class QuadratureFailure(FdchkError):
    """Adaptive quadrature did not reach the requested tolerance."""


class BracketFailure(FdchkError):
    """Monotone inversion found no sign change within the expansion budget."""


class ConvergenceFailure(FdchkError):
    """A dense eigensolve failed to converge."""


class SolverDivergence(FdchkError):
    """The iterative linear solver did not reach the residual tolerance."""
