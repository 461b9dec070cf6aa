"""Search budgets for the semi-decision procedures.

All three knobs surface as CLI flags; environment variables override
the built-in defaults (POCHETTE_MAX_COSETS, POCHETTE_TIETZE_STEPS,
POCHETTE_QUOTIENT_DEGREE).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import InputError

__all__ = ["Budgets"]


@dataclass(frozen=True)
class Budgets:
    max_cosets: int = 100_000
    tietze_steps: int = 10_000
    quotient_degree: int = 8

    def __post_init__(self):
        if self.max_cosets <= 0 or self.tietze_steps <= 0:
            raise InputError("budgets must be positive")
        if self.quotient_degree < 2:
            raise InputError("quotient degree must be at least 2")

    @staticmethod
    def from_env() -> "Budgets":
        def read(var: str, default: int) -> int:
            raw = os.environ.get(var)
            if raw is None:
                return default
            try:
                return int(raw)
            except ValueError as exc:
                raise InputError(f"{var} must be an integer, got {raw!r}") from exc

        return Budgets(
            max_cosets=read("POCHETTE_MAX_COSETS", 100_000),
            tietze_steps=read("POCHETTE_TIETZE_STEPS", 10_000),
            quotient_degree=read("POCHETTE_QUOTIENT_DEGREE", 8),
        )
