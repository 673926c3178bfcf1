"""Decorators guarding brute-force operations with budgets."""

import logging
from functools import wraps
from typing import Any, Callable

from .exceptions import BudgetExceededError
from .settings import env_var, get_budgets

logger = logging.getLogger(__name__)


def budget_guard(limit: str, measure: Callable[..., int]):  # noqa: ANN201
    """Decorator to refuse calls whose size exceeds a configured budget

    Args:
        limit: Name of the field in Budgets holding the maximum
        measure: Callable receiving the wrapped function's arguments and returning the size
    """

    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            size = measure(*args, **kwargs)
            maximum = get_budgets().limit(limit)
            if size > maximum:
                logger.warning(f"{func.__name__} refused: size {size} exceeds {limit}={maximum}")
                raise BudgetExceededError(
                    f"{func.__name__}: size {size} exceeds budget {maximum} "
                    f"(raise with {env_var(limit)})"
                )
            return func(*args, **kwargs)

        return wrapper

    return decorator
