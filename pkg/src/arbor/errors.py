"""Exception types shared across the package."""


class ConstraintError(ValueError):
    """An input violates a structural constraint (signals caller misuse)."""


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed the configured object budget."""

    def __init__(self, message, total=None):
        super().__init__(message)
        self.total = total


class MalformedPathError(ValueError):
    """A lattice path fails validation; ``index`` locates the offending step."""

    def __init__(self, message, index):
        super().__init__(message)
        self.index = index
