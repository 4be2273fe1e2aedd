"""Exception hierarchy shared by every fewweight module."""


class FewWeightError(Exception):
    """Base class for all errors raised by this package."""


class InvalidPrime(FewWeightError, ValueError):
    pass


class MixedPrime(FewWeightError, ValueError):
    pass


class CycOverflow(FewWeightError, OverflowError):
    pass


class BudgetExceeded(FewWeightError):
    pass


class DivisionByZero(FewWeightError, ZeroDivisionError):
    pass


class InvalidSubfield(FewWeightError, ValueError):
    pass


class NotInSubfield(FewWeightError, ValueError):
    pass


class ZeroArgument(FewWeightError, ValueError):
    pass


class ZeroLeadingCoefficient(FewWeightError, ValueError):
    pass


class NotPermutation(FewWeightError, ArithmeticError):
    pass


class InvalidParameters(FewWeightError, ValueError):
    """Raised when (p, e, alpha, t) violate the construction's hypotheses.

    ``constraint`` names the violated condition, e.g. ``"e/d odd"``.
    """

    def __init__(self, message: str, constraint: str):
        super().__init__(message)
        self.constraint = constraint


class UnsupportedRegime(FewWeightError):
    """No closed form is available for the requested case."""
