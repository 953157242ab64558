"""Runtime limits shared by the enumeration routines."""

import os

from .errors import DomainError

DEFAULT_BUDGET = 1 << 24


def default_budget() -> int:
    """State-space cap for exhaustive modes; ``BOOLCOMM_BUDGET`` overrides it."""
    env = os.environ.get("BOOLCOMM_BUDGET")
    if env:
        value = int(env)
        if value <= 0:
            raise DomainError(f"BOOLCOMM_BUDGET must be positive, got {value}")
        return value
    return DEFAULT_BUDGET
