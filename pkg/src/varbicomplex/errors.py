"""Exception hierarchy shared by the library and the command line."""

from __future__ import annotations


class VariationalError(Exception):
    """Base class for every error raised by varbicomplex."""


class ParseError(VariationalError, ValueError):
    """Malformed input text; ``position`` is the 0-based offset of the problem."""

    def __init__(self, message: str, position: int | None = None, text: str | None = None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ZeroDenominatorError(VariationalError, ZeroDivisionError):
    """An expression would acquire an identically zero denominator."""


class UndefinedOrderError(VariationalError, ValueError):
    """``order_of`` was asked about the zero expression."""


class NotVariationalError(VariationalError):
    """A source form has a non-vanishing Helmholtz-Sonin form."""

    def __init__(self, message: str, helmholtz_form=None):
        self.helmholtz_form = helmholtz_form
        super().__init__(message)


class NotSupportedError(VariationalError):
    """The input is legitimate but lies outside what the tool can handle exactly."""


class NonPolynomialCoefficient(NotSupportedError):
    """A homotopy integral was requested for a non-polynomial coefficient."""


class NotAffineError(NotSupportedError):
    """A second-order source form is not affine in the second derivatives."""


class SymmetryViolation(VariationalError, ValueError):
    """Components handed to ``fiber_potential`` are not a fiber gradient."""


class InvariantViolation(VariationalError, AssertionError):
    """An internal identity that must hold exactly was found to fail."""
