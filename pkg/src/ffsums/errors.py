"""Exception taxonomy shared by every module in the package.

Each exception class names one precise failure mode; callers are expected to
catch the narrow class they can handle.  Raising happens as early as possible
(at argument validation time), so invalid configurations never reach an
expensive computation.
"""

from __future__ import annotations


class FFSumsError(Exception):
    """Base class for all package-specific errors."""


class DivisionByZero(FFSumsError):
    """Division (field, polynomial, or modular) by a zero element."""


class UnsupportedCharacteristic(FFSumsError):
    """Operation requires odd characteristic (or odd q) but got even."""


class NotInvertible(FFSumsError):
    """Modular inverse requested for an element sharing a factor with the
    modulus.  Carries the offending gcd as ``gcd``."""

    def __init__(self, message: str, gcd=None):
        super().__init__(message)
        self.gcd = gcd


class UndefinedGcd(FFSumsError):
    """gcd(0, 0) requested; no monic normalization exists."""


class NotFactorable(FFSumsError):
    """Factorization failed an internal reconstruction check."""


class IncompatibleCyclotomicOrder(FFSumsError):
    """Arithmetic attempted between cyclotomic values of different prime
    order."""


class InvalidParameter(FFSumsError):
    """A scalar/structural parameter is out of its documented range."""


class InvalidSupport(FFSumsError):
    """A weight sequence's support is malformed (duplicates, wrong ambient
    degree range, or empty)."""


class HypothesisViolation(FFSumsError):
    """Inputs violate a stated hypothesis of the requested bound or identity
    (e.g. modulus must be irreducible, parameters must be coprime)."""
