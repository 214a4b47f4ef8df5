"""Kernel selection: compiled extension when built, pure Python otherwise.

Set SKLOGIC_PURE_PYTHON=1 to force the fallback (used by the benchmark and
by tests that compare the two implementations).
"""

import os

from . import _stable_core_py

if os.environ.get("SKLOGIC_PURE_PYTHON"):
    _impl = _stable_core_py
    BACKEND = "python"
else:
    try:
        from . import _stable_core as _impl  # type: ignore[attr-defined]

        BACKEND = "c"
    except ImportError:
        _impl = _stable_core_py
        BACKEND = "python"

enumerate_stable = _impl.enumerate_stable


def backends():
    """Every importable kernel, keyed by name."""
    out = {"python": _stable_core_py.enumerate_stable}
    try:
        from . import _stable_core  # type: ignore[attr-defined]

        out["c"] = _stable_core.enumerate_stable
    except ImportError:
        pass
    return out
