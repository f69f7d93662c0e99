"""Exception hierarchy shared by all modules (the CLI maps these to exit codes)."""


class ParameterError(ValueError):
    """Parameters violate a documented precondition."""


class DegreeCapError(ParameterError):
    """Requested polynomial degree exceeds the configured cap."""


class UnsupportedCaseError(ValueError):
    """The requested case has no closed-form kernel (cases 4 and 5)."""


class NumericalError(ArithmeticError):
    """Base class for failures of a numerical method."""


class PrecisionFloorError(NumericalError):
    """Requested tolerance lies below the achievable rounding floor."""

    def __init__(self, message, achievable):
        super().__init__(message)
        self.achievable = achievable


class ConvergenceError(NumericalError):
    """Tolerance not reached within the work budget."""

    def __init__(self, message, best_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate
