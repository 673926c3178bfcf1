"""Search and size budgets, configurable through the environment."""

import logging
import os
from dataclasses import dataclass, fields, replace
from typing import Optional

from .exceptions import ExcitationStateConfigError

try:
    from dotenv import load_dotenv

    load_dotenv()
    DOTENV_AVAILABLE = True
except ImportError:
    DOTENV_AVAILABLE = False

logger = logging.getLogger(__name__)

ENV_PREFIX = "EXCITATION_STATES_"


@dataclass(frozen=True)
class Budgets:
    """Upper limits for brute-force searches and dense constructions"""

    max_group_order: int = 1_000_000
    max_automorphism_vertices: int = 10
    max_stabilizer_qubits: int = 8
    max_orbit_qubits: int = 16
    max_reduced_qubits: int = 12
    max_product_vertices: int = 20
    max_sector_dim: int = 5000
    max_dense_qubits: int = 14

    @classmethod
    def from_env(cls) -> "Budgets":
        """Build budgets from EXCITATION_STATES_* variables, defaults elsewhere."""
        values = {}
        for field in fields(cls):
            env_name = env_var(field.name)
            raw = os.getenv(env_name)
            if raw is None or raw.strip() == "":
                continue
            try:
                value = int(raw)
            except ValueError as e:
                raise ExcitationStateConfigError(
                    f"{env_name} must be an integer, got {raw!r}"
                ) from e  # noqa: B904
            if value < 1:
                raise ExcitationStateConfigError(f"{env_name} must be positive, got {value}")
            values[field.name] = value
        return cls(**values)

    def limit(self, name: str) -> int:
        if not hasattr(self, name):
            raise ExcitationStateConfigError(f"Unknown budget: {name}")
        return getattr(self, name)


def env_var(name: str) -> str:
    """Environment variable that overrides the named budget."""
    return f"{ENV_PREFIX}{name.upper()}"


# Global budgets instance
_budgets: Optional[Budgets] = None


def initialize_budgets(**overrides: int) -> Budgets:
    """Initialize global budgets from the environment

    Args:
        **overrides: Budget values taking precedence over the environment
    """
    global _budgets
    budgets = Budgets.from_env()
    if overrides:
        budgets = replace(budgets, **overrides)
    _budgets = budgets
    logger.debug(f"Budgets initialized: {budgets}")
    return budgets


def get_budgets() -> Budgets:
    """Get global budgets, initializing from the environment on first use"""
    if _budgets is None:
        initialize_budgets()
    return _budgets


def set_budgets(budgets: Optional[Budgets]) -> None:
    """Replace the global budgets; None forces re-reading the environment."""
    global _budgets
    _budgets = budgets
