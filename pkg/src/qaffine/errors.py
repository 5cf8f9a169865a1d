"""Exception types shared across the package."""


class QAffineError(Exception):
    """Base class for all errors raised by qaffine."""


class ScalarZeroDivision(QAffineError, ZeroDivisionError):
    """Division by the zero scalar."""


class PoleError(QAffineError):
    """Substitution z = q^k hit a zero of the denominator."""


class RelationError(QAffineError):
    """A constructed module violates a defining relation."""


class DimensionError(QAffineError, ValueError):
    """Shapes or arities do not match."""


class BoundExceeded(QAffineError):
    """A computational size bound was exceeded."""


class NotTypeOne(QAffineError):
    """K_1 does not act diagonally with eigenvalues q^w."""


class IdentificationError(QAffineError):
    """No standard module in the searched window matches a simple module."""


class FunctorialityError(QAffineError):
    """A braiding fails to preserve a submodule."""
