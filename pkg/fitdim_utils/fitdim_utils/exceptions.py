"""Exceptions

All errors raised on purpose by the fitdim_utils package. Built-in exceptions are used where they
fit already (OverflowError, ZeroDivisionError); the classes below carry the extra context that the
command line front end needs to report a problem and to choose its exit code.

"""


class FitdimError(Exception):
    """Base class of all fitdim errors"""


class StructuralError(FitdimError, ValueError):
    """Objects do not fit together (ring mismatch, arity, shapes, rank bookkeeping)"""


class ComplexError(StructuralError):
    """A composition of two differentials is not zero

    Args:
        message (str): Error message.
        degree (int): Degree n such that the composition of the differentials in degree n-1 and n
            is nonzero.
        row (int): Row of the first nonzero entry of the composition.
        column (int): Column of the first nonzero entry of the composition.

    """
    def __init__(self, message, degree=None, row=None, column=None):
        super().__init__(message)
        self.degree = degree
        self.row = row
        self.column = column


class ParseError(FitdimError, ValueError):
    """Syntax error in a polynomial string or in a complex document

    Args:
        message (str): Error message.
        line (int): Line number (1-based) of the error.
        column (int): Column number (1-based) of the error.

    """
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class ConfigError(FitdimError, ValueError):
    """Invalid configuration value"""


class GroebnerTimeout(FitdimError, RuntimeError):
    """A Gröbner basis computation exceeded its time budget"""


class LiftError(FitdimError, AssertionError):
    """A boundary could not be lifted through the cycle generators"""
