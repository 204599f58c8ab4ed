"""Exception hierarchy shared by every module."""


class HallforgeError(Exception):
    """Base class for engine errors."""


class DimensionMismatch(HallforgeError, ValueError):
    pass


class FieldMismatch(HallforgeError, ValueError):
    pass


class QuiverMismatch(HallforgeError, ValueError):
    pass


class BudgetExceeded(HallforgeError):
    """An enumeration would exceed the configured step budget."""

    def __init__(self, what, needed, budget):
        super().__init__(f"{what}: needs {needed} steps, budget is {budget}")
        self.needed = needed
        self.budget = budget


class IntegralityError(HallforgeError, ArithmeticError):
    """A count that must be an integer came out fractional (an engine bug)."""


class UnknownLabel(HallforgeError, KeyError):
    pass


DEFAULT_BUDGET = 10**7


def check_budget(what, needed, budget):
    if budget is not None and needed > budget:
        raise BudgetExceeded(what, needed, budget)
