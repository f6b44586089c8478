"""Exception hierarchy shared by every qgw module."""


class QGWError(Exception):
    """Base class for all kernel errors."""


class DivisionByZero(QGWError, ZeroDivisionError):
    pass


class DenominatorVanishes(QGWError, ZeroDivisionError):
    pass


class PoleAtZero(QGWError):
    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class InexactDivision(QGWError, ArithmeticError):
    pass


class AlphabetMismatch(QGWError):
    pass


class MissingImage(QGWError, KeyError):
    pass


class NonTerminatingGuard(QGWError):
    pass


class UnknownPresentation(QGWError, KeyError):
    pass


class UnknownGenerator(QGWError):
    pass


class NonDecreasingRule(QGWError):
    pass


class DimensionMismatch(QGWError, ValueError):
    pass


class IndexOutOfRange(QGWError, IndexError):
    pass


class NonHomogeneous(QGWError, ValueError):
    pass


class NotClosed(QGWError):
    pass


class DependenceViolation(QGWError):
    def __init__(self, message, coefficient=None):
        super().__init__(message)
        self.coefficient = coefficient


class ConfigError(QGWError):
    pass


class DSLSyntaxError(SyntaxError):
    """Parse failure in the expression grammar or the presentation DSL.

    ``lineno`` and ``offset`` follow the builtin ``SyntaxError`` convention
    (both 1-based).
    """

    def __init__(self, message, line=1, column=1, text=None):
        super().__init__(f"{message} (line {line}, column {column})")
        self.msg = message
        self.lineno = line
        self.offset = column
        self.text = text

    def __str__(self):
        return f"{self.msg} (line {self.lineno}, column {self.offset})"
