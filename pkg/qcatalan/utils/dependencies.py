"""
Errors and guard functions shared by the library and the command line
"""
from typing import Optional


class QCatalanError(Exception):
    """Operational failure; the command line turns these into exit code 1."""
    exit_code = 1

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class BudgetExceededError(QCatalanError):
    def __init__(self, what: str, size: int, budget: int):
        super().__init__(f"{what}: size {size} exceeds budget {budget}")
        self.what = what
        self.size = size
        self.budget = budget


class UsageError(QCatalanError):
    pass


class OeisParseError(QCatalanError):
    def __init__(self, detail: str, raw: Optional[str] = None):
        super().__init__(detail)
        self.raw = raw


def require_within_budget(what: str, size: int, budget: int) -> int:
    """
    Guard that a computation of the given size fits the configured budget.
    Raises BudgetExceededError otherwise and returns the size when it fits.
    """
    if budget <= 0:
        raise ValueError(f"budget for {what} must be positive, got {budget}")
    if size > budget:
        raise BudgetExceededError(what, size, budget)
    return size


def require_rank_budget(M: int, limit: int) -> int:
    """
    Guard for exact rank computations, which are only promised up to `limit` generators.
    """
    if M > limit:
        raise BudgetExceededError("homology rank generators", M, limit)
    return M
