from __future__ import annotations


class LatticeError(Exception):
    """Base class for every error raised by the toolkit."""


class InvalidFieldError(LatticeError, ValueError):
    pass


class UnsupportedFieldError(LatticeError, ValueError):
    pass


class CapacityError(LatticeError):
    pass


class OutOfRangeError(LatticeError, ValueError):
    pass


class DomainError(LatticeError, ValueError):
    pass


class UndefinedMainTermError(DomainError):
    pass


class FitRefusedError(LatticeError, ValueError):
    pass


class NumericFailure(LatticeError):
    """A numeric routine ran out of budget before reaching its tolerance."""

    def __init__(self, message: str, *, partial: float | complex | None = None,
                 bound: float | None = None) -> None:
        super().__init__(message)
        self.partial = partial
        self.bound = bound


class IdentityViolation(LatticeError):
    def __init__(self, message: str, *, r: int) -> None:
        super().__init__(message)
        self.r = r


class OracleMismatch(LatticeError):
    pass
