"""Tunable limits shared by the search-based components."""

from __future__ import annotations

import os
from dataclasses import dataclass

GUARD_ENV_VAR = "DISCOVERY_GUARD_LIMIT"


@dataclass(frozen=True)
class Limits:
    """Explosion guards and gates; all knobs, no hard constants."""

    oracle_guard: int = 10_000_000
    exact_treewidth_limit: int = 18
    exhaustive_family_limit: int = 25

    def with_guard(self, guard: int | None) -> "Limits":
        if guard is None:
            return self
        return Limits(
            oracle_guard=guard,
            exact_treewidth_limit=self.exact_treewidth_limit,
            exhaustive_family_limit=self.exhaustive_family_limit,
        )


def default_limits() -> Limits:
    """Default limits, honoring the guard-limit environment override."""
    raw = os.environ.get(GUARD_ENV_VAR)
    if raw is None:
        return Limits()
    try:
        return Limits(oracle_guard=int(raw))
    except ValueError:
        return Limits()


DEFAULT_LIMITS = default_limits()
