"""Exception types shared across the package."""


class ExonumError(Exception):
    """Base class for all package errors."""


class DomainError(ExonumError, ValueError):
    """An argument lies outside the domain of the operation."""


class CapacityError(ExonumError):
    """A brute-force oracle was asked for an input beyond its cap."""


class PrecisionError(ExonumError, ArithmeticError):
    """A float-backed real cannot certify the requested digits."""
