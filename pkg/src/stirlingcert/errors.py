"""Exceptions shared across the package."""


class DomainError(ValueError):
    """An operand lies outside the mathematical domain of an operation."""


class UndecidedError(RuntimeError):
    """A certified decision could not be reached within the precision ceiling.

    Raised instead of returning a possibly wrong answer.
    """
