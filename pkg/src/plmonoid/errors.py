"""Exception types shared across the package."""


class PlmError(Exception):
    """Base class for every error this package raises on purpose."""


class NotPlmError(PlmError):
    """A dense 0/1 matrix does not have exactly one 1 in every column."""

    def __init__(self, message: str, column: int | None = None, count: int | None = None):
        super().__init__(message)
        self.column = column
        self.count = count


class DimensionMismatchError(PlmError):
    """Operands have different dimensions."""


class NotCplmError(PlmError):
    """The operation needs a matrix whose first row is zero past column 1."""


class ZeroColumnError(PlmError):
    """A column with no positive entry where one is required."""

    def __init__(self, column: int):
        super().__init__(f"column {column} has no positive entry")
        self.column = column


class NotLeftStochasticError(PlmError):
    """Matrix fails left-stochastic validation (negative entry or bad column sum)."""

    def __init__(self, message: str, column: int | None = None, total=None):
        super().__init__(message)
        self.column = column
        self.total = total


class WeightSumNotOneError(PlmError):
    """Convex weights do not sum to exactly one."""


class RootFindingError(PlmError):
    """The numeric eigenvalue cross-check failed or could not be carried out.

    Exact verdicts (periodicity, characteristic polynomial) are unaffected.
    """

    def __init__(self, message: str, root=None, deviation: float | None = None):
        super().__init__(message)
        self.root = root
        self.deviation = deviation


class MatrixParseError(PlmError):
    """A matrix file could not be parsed."""

    def __init__(self, path: str, line: int | None, message: str):
        where = path if line is None else f"{path}:{line}"
        super().__init__(f"{where}: {message}")
        self.path = path
        self.line = line
