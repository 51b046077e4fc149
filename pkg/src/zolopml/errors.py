"""Exception types raised across the package."""


class ZolopmlError(Exception):
    """Base class for all package errors."""


class DomainError(ZolopmlError, ValueError):
    """An argument lies outside the domain of the operation."""


class SingularMatrixError(ZolopmlError, ArithmeticError):
    """A pivot fell below the singularity threshold during elimination."""


class RootFindingError(ZolopmlError, ArithmeticError):
    """Polynomial root finding failed to converge.

    Carries the offending polynomial and the best iterates reached.
    """

    def __init__(self, message, poly=None, iterates=None):
        super().__init__(message)
        self.poly = poly
        self.iterates = iterates


class BreakdownError(ZolopmlError, ArithmeticError):
    """The quasi-Lanczos or Euclidean recursion hit a (near) zero pivot."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class ConsistencyError(ZolopmlError, ArithmeticError):
    """Two independent computation paths disagree beyond tolerance."""


class GridFormatError(ZolopmlError, ValueError):
    """A grid file could not be parsed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
