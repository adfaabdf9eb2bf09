# core/errors.py

"""Error hierarchy shared by every numerical module."""


class BergmanError(Exception):
    """Base class for all library errors."""


class NotInDomain(BergmanError, ValueError):
    pass


class SeriesTruncationFailure(BergmanError, RuntimeError):
    pass


class NearSingularLocus(BergmanError, ValueError):
    """Raised when zζ̄ comes within the boundary margin of a singular circle."""


class NonPositiveMetric(BergmanError, ArithmeticError):
    pass


class QuadratureNotConverged(BergmanError, RuntimeError):
    pass


class OptimizerNotConverged(BergmanError, RuntimeError):
    """Only raised in strict mode; otherwise the result carries converged=False."""


class KernelZeroAtBasePair(BergmanError, ValueError):
    pass


class NoSignChange(BergmanError, ValueError):
    def __init__(self, message: str, values=None):
        super().__init__(message)
        self.values = values


class ContourThroughZero(BergmanError, RuntimeError):
    pass


class NewtonDiverged(BergmanError, RuntimeError):
    pass


class BranchAmbiguity(BergmanError, ArithmeticError):
    def __init__(self, message: str, residuals=None):
        super().__init__(message)
        self.residuals = residuals


class NotOnZeroSet(BergmanError, ValueError):
    pass


class TooLarge(BergmanError, ValueError):
    pass


class IoFailure(BergmanError, OSError):
    pass
