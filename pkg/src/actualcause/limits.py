"""Budget guard for the exponential enumerations.

The meta-level searches enumerate subsets of the endogenous variables
(and worse), so they refuse to start on models above a variable budget
unless the caller explicitly forces them.  The default of 12 variables
can be overridden with the ACTUAL_CAUSE_MAX_VARS environment variable.
"""

from __future__ import annotations

import os

from .errors import ResourceLimitError

DEFAULT_MAX_VARS = 12
ENV_VAR = "ACTUAL_CAUSE_MAX_VARS"


def max_vars() -> int:
    raw = os.environ.get(ENV_VAR)
    if raw is None:
        return DEFAULT_MAX_VARS
    try:
        value = int(raw)
    except ValueError:
        raise ResourceLimitError(f"{ENV_VAR} must be an integer, got {raw!r}")
    if value < 1:
        raise ResourceLimitError(f"{ENV_VAR} must be positive, got {value}")
    return value


def check_enumeration_size(model, force: bool = False) -> None:
    """Raise ResourceLimitError when the model is over budget."""
    if force:
        return
    count = len(model.signature.endogenous)
    limit = max_vars()
    if count > limit:
        raise ResourceLimitError(
            f"model {model.name!r} has {count} endogenous variables, over "
            f"the enumeration budget of {limit}; pass force=True "
            f"(--force on the command line) or raise {ENV_VAR} to proceed"
        )
