"""Exceptions shared across the package."""

# Raised by BaseScalar.inverse(0); kept as an alias so callers can catch
# the library name or the builtin interchangeably.
DivisionByZero = ZeroDivisionError


class DimensionMismatch(ValueError):
    """Operands built for different dimensions (j-vector lengths differ)."""


class BadDimension(ValueError):
    """Dimension outside the supported range (N >= 3)."""


class NegativeNilpotentPower(ArithmeticError):
    """A term kept a negative power of a nilpotent unit after all cancellation."""


class NotAUnit(ArithmeticError):
    """Inverse requested of a scalar that is not a single invertible monomial."""


class NotTriangular(ValueError):
    """Triangular inversion applied to a matrix that is not triangular."""


class NotAffineInJv(ValueError):
    """Specialized R-matrix entry is not of the form delta + Jv * number."""


class InconsistentPairing(ValueError):
    """Duality pairing equations are contradictory under the monomial ansatz."""


class WordTooLong(ValueError):
    """Functional evaluated on a word longer than the configured bound."""
