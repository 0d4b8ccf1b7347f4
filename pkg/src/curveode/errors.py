"""Exception hierarchy shared by every module of the package."""


class CurveOdeError(Exception):
    """Base class; ``kind`` is the name reported in CLI error JSON."""

    @property
    def kind(self) -> str:
        return type(self).__name__


class ZeroFreeTerm(CurveOdeError, ArithmeticError):
    """The series has zero free term, so it is not a unit."""


class NonSquareFreeTerm(CurveOdeError, ArithmeticError):
    """The free term has no rational square root."""


class IndeterminateOrder(CurveOdeError):
    """Every stored coefficient is zero but the series is only known to finite precision."""


class SeriesZeroDivision(CurveOdeError, ZeroDivisionError):
    """Division by a series that is zero (exactly or to working precision)."""

    @property
    def kind(self) -> str:
        return "ZeroDivision"


class PrecisionExhausted(CurveOdeError):
    """Cancellation consumed every tracked coefficient."""


class InsufficientTruncation(CurveOdeError):
    """An operation needs more known coefficients than its input carries."""


class NotOnCurve(CurveOdeError):
    """The declared branch point does not satisfy the chart equation."""


class DegenerateBranch(CurveOdeError):
    """dF/du vanishes at the branch point; t is not a local parameter there."""


class ExprSyntaxError(CurveOdeError):
    """Malformed expression text."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position

    @property
    def kind(self) -> str:
        return "SyntaxError"


class UnknownVariable(CurveOdeError):
    """An expression references a name the chart does not declare."""


class NotPositiveDegree(CurveOdeError):
    """The equation has degree <= 0; its only solution is zero."""


class TailBoundUnreliable(UserWarning):
    """Evaluation point lies outside the estimated radius of convergence."""
