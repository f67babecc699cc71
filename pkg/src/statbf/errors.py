"""Exception hierarchy.

Input problems derive from ``ValueError``; failures of a numerical procedure
on valid input derive from ``NumericalError`` so callers (the CLI in
particular) can tell the two apart.
"""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class UnsupportedPriorError(ValueError):
    pass


class DegeneratePriorError(ValueError):
    pass


class InfeasibleAssessmentError(ValueError):
    """An elicited predictive is tighter than the null's own sampling spread."""


class NumericalError(ArithmeticError):
    pass


class ConvergenceError(NumericalError):
    def __init__(self, message, estimate=float("nan"), error=float("nan")):
        super().__init__(f"{message} (estimate={estimate!r}, error bound={error!r})")
        self.estimate = estimate
        self.error = error


class BracketError(NumericalError):
    pass


class CalibrationError(NumericalError):
    pass


class UndefinedFractionError(NumericalError):
    def __init__(self, message, counts):
        super().__init__(f"{message}: {counts}")
        self.counts = dict(counts)
