"""Exception hierarchy for batchlp."""


class BatchLpError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(BatchLpError, ValueError):
    pass


class NonFiniteEntry(BatchLpError, ValueError):
    pass


class PhaseOneNotConverged(BatchLpError):
    """Phase one ended with a positive artificial sum: the LP is infeasible."""


class PivotTooSmall(BatchLpError, ArithmeticError):
    pass


class IterationLimitExceeded(BatchLpError):
    pass


class ShapeMismatch(BatchLpError, ValueError):
    pass


class EmptyBatch(BatchLpError, ValueError):
    pass


class BudgetTooSmall(BatchLpError, ValueError):
    pass


class InvalidSpec(BatchLpError, ValueError):
    pass


class TooLarge(BatchLpError, ValueError):
    pass


class BatchFileError(BatchLpError, ValueError):
    """Malformed batch file; ``lineno`` is 1-based (0 when unknown)."""

    def __init__(self, message, lineno=0):
        self.lineno = lineno
        where = f"line {lineno}: " if lineno else ""
        super().__init__(where + message)
