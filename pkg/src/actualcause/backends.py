"""Kernel backend selection.

The compiled extension is used when present; set ACTUAL_CAUSE_BACKEND
to ``py`` (or ``pure``) to force the pure-Python kernel, ``c`` (or
``compiled``) to require the extension, or ``auto`` for the default.
"""

from __future__ import annotations

import os

from .errors import CausalError

ENV_VAR = "ACTUAL_CAUSE_BACKEND"


def _load():
    choice = os.environ.get(ENV_VAR, "auto").strip().lower()
    if choice in ("c", "compiled"):
        from . import _kernel

        return _kernel.Kernel, "c"
    if choice in ("py", "pure", "python"):
        from . import _kernel_py

        return _kernel_py.Kernel, "py"
    if choice != "auto":
        raise CausalError(
            f"{ENV_VAR} must be auto, c, compiled, py, pure or python; "
            f"got {choice!r}"
        )
    try:
        from . import _kernel

        return _kernel.Kernel, "c"
    except ImportError:
        from . import _kernel_py

        return _kernel_py.Kernel, "py"


Kernel, BACKEND = _load()


def backend_name() -> str:
    """``c`` when the compiled kernel is active, ``py`` otherwise."""
    return BACKEND
