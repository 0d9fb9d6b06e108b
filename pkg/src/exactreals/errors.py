"""Exception types shared across the package."""


class DomainError(ArithmeticError):
    """An argument lies outside the domain of an operation.

    Raised for division by zero, violated positivity witnesses and
    arguments outside a function's stated interval.
    """


class DivisionByZero(DomainError, ZeroDivisionError):
    pass
