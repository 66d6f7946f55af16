"""Exception types raised by the public API."""


class ModmassError(Exception):
    """Base class for all errors raised by modmass."""


class DomainError(ModmassError, ValueError):
    """An argument lies outside the domain of the operation."""


class PoleError(DomainError):
    """Evaluation requested at (or numerically at) a pole."""


class ConvergenceError(ModmassError, ArithmeticError):
    """A series or sum was used outside its range of convergence."""


class RangeError(ModmassError, IndexError):
    """Requested data (eigenvalues, coefficients) beyond the stored range."""


class UnsupportedWeightError(DomainError):
    """The weight is odd, too small, or otherwise unsupported."""


class ClusteringError(ModmassError, ArithmeticError):
    """Hecke eigenvalues too close to separate at the working precision."""


class WeightMismatchError(ModmassError, ValueError):
    """Forms of incompatible weights were combined."""


class QuadratureBudgetError(ModmassError, RuntimeError):
    """Adaptive quadrature exceeded its evaluation budget."""


class ParseError(ModmassError, ValueError):
    """A data file could not be parsed.

    The offending 1-based line number is available as ``lineno``.
    """

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class ValidationError(ModmassError, ValueError):
    """Parsed data violates a structural invariant."""


class ConvergenceWarning(UserWarning):
    """A truncated sum's tail bound is large relative to its value."""


class TruncationWarning(UserWarning):
    """A Fourier truncation left a non-negligible last term."""


class StepSizeWarning(UserWarning):
    """Finite-difference results at h and h/2 disagree."""
