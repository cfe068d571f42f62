"""Exception and warning types shared across the package."""


class ApprovalSeatsError(Exception):
    """Base class for all errors raised by this package."""


class DataError(ApprovalSeatsError, ValueError):
    """Malformed or invalid input data."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DomainError(ApprovalSeatsError, ValueError):
    """Argument outside the domain of a numerical function."""


class DegenerateModelError(ApprovalSeatsError, ValueError):
    """A model cannot be fitted or tested on the given data."""


class InsufficientDataError(DegenerateModelError):
    """Too few observations for the requested fit."""


class ExtrapolationWarning(UserWarning):
    """Query point lies outside the range or defining group of the fitted data."""
