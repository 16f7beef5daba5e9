"""Exception types shared across the package."""


class QPeriodError(Exception):
    """Base class for all package errors."""


class DomainError(QPeriodError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Evaluation was requested at (or too close to) a pole.

    The offending location is stored in ``where``.
    """

    def __init__(self, message, where=None):
        super().__init__(message)
        self.where = where


class SingularMatrixError(QPeriodError, ArithmeticError):
    """An exact linear solve hit a singular matrix."""


class PrecisionError(QPeriodError, ValueError):
    """The requested precision is too low for the computation.

    ``recommended_bits``, when set, is a precision that should succeed.
    """

    def __init__(self, message, recommended_bits=None):
        super().__init__(message)
        self.recommended_bits = recommended_bits
