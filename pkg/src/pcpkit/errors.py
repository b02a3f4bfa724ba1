"""Exception types shared across the package."""


class PcpKitError(Exception):
    """Base class for all package-specific errors."""


class InvalidInputError(PcpKitError, ValueError):
    """Raised when an argument violates a documented precondition."""


class DegenerateInputError(PcpKitError):
    """Raised when an input is too degenerate for the requested computation,
    e.g. a map vanishing on the sampling circle or a regular value that could
    not be found within the retry budget."""


class BudgetExhaustedError(PcpKitError):
    """Raised when an iterative procedure hits its pivot or iteration budget
    without reaching a conclusive state."""
