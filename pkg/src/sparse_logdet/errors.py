"""Exception hierarchy shared by all modules."""


class LogdetError(Exception):
    """Base class for every error raised by this package."""


class InputError(LogdetError, ValueError):
    """Malformed or invalid input data."""


class AsymmetricInput(InputError):
    pass


class MissingDiagonal(InputError):
    pass


class NonPositiveDiagonal(InputError):
    pass


class DuplicateEntry(InputError):
    pass


class IndexOutOfRange(InputError, IndexError):
    pass


class DomainError(InputError):
    pass


class GridOverflow(InputError, OverflowError):
    pass


class NotPositiveDefinite(LogdetError, ArithmeticError):
    """A factorization met a pivot that is not strictly positive and finite.

    ``row`` is the originating matrix row when the failure happened inside
    the estimator, otherwise ``None``.
    """

    def __init__(self, message, row=None):
        if row is not None:
            message = f"{message} (row {row})"
        super().__init__(message)
        self.row = row


class TooLargeForOracle(LogdetError, MemoryError):
    pass


class NeedTwoPoints(DomainError):
    pass


class SaturatedPattern(DomainError):
    pass


class NonIncreasingCoordinates(DomainError):
    pass


class ZeroNormColumn(LogdetError, ArithmeticError):
    pass


class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.line = line
        self.column = column


class UnsupportedFormat(InputError):
    pass


class SinkError(LogdetError, OSError):
    pass
