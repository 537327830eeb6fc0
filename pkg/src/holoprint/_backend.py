"""Kernel backend selection.

The compiled ``_kernels`` extension and the numpy ``_kernels_py`` module
expose the same two entry points (``eval_points``, ``eval_jacobians``)
over the same plan format.  The compiled one is preferred when present;
the choice can be pinned with the HOLOPRINT_BACKEND environment variable
("compiled" or "python"), read once at import.
"""

from __future__ import annotations

import os

from . import _kernels_py

_requested = os.environ.get("HOLOPRINT_BACKEND", "auto").strip().lower()

if _requested in ("auto", "", "compiled", "c", "cython"):
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        _name = "compiled"
    except ImportError:
        if _requested not in ("auto", ""):
            raise ImportError(
                "HOLOPRINT_BACKEND requested the compiled kernels but the "
                "extension is not built; reinstall or set "
                "HOLOPRINT_BACKEND=python"
            ) from None
        _impl = _kernels_py
        _name = "python"
elif _requested in ("python", "py", "pure"):
    _impl = _kernels_py
    _name = "python"
else:
    raise ValueError(f"unrecognized HOLOPRINT_BACKEND value {_requested!r}")


def backend_name() -> str:
    """Name of the active kernel backend: "compiled" or "python"."""
    return _name


def eval_points(plan, Z):
    return _impl.eval_points(plan, Z)


def eval_jacobians(plan, Z):
    return _impl.eval_jacobians(plan, Z)
