"""Context managers for temporary budget changes."""

from dataclasses import replace
from typing import Optional

from .settings import Budgets, get_budgets, set_budgets


class budget_override:  # noqa: ANN201,ANN202
    """Context manager swapping in larger or smaller budgets

    Example:
        with budget_override(max_automorphism_vertices=20):
            automorphism_group(platonic("dodecahedron"))
    """

    def __init__(self, **limits: int):
        self.limits = limits
        self.previous: Optional[Budgets] = None

    def __enter__(self) -> Budgets:
        self.previous = get_budgets()
        budgets = replace(self.previous, **self.limits)
        set_budgets(budgets)
        return budgets

    def __exit__(self, exc_type, exc_val, exc_tb):
        set_budgets(self.previous)
