"""Census backend selection: compiled extension when available, pure Python
otherwise.  BOUQUET_KERNEL=python|cython forces a choice at import time."""

import os

from . import _census_py

_forced = os.environ.get("BOUQUET_KERNEL")

if _forced == "python":
    _impl = _census_py
    BACKEND = "python"
elif _forced == "cython":
    from . import _census_core as _impl  # noqa: F401  (ImportError is the point)

    BACKEND = "cython"
elif _forced:
    raise RuntimeError(f"BOUQUET_KERNEL must be 'python' or 'cython', got {_forced!r}")
else:
    try:
        from . import _census_core as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _census_py
        BACKEND = "python"


def backend_module(name: str | None = None):
    """The active census kernel, or a specific one by name."""
    if name is None:
        return _impl
    if name == "python":
        return _census_py
    if name == "cython":
        from . import _census_core

        return _census_core
    raise ValueError(f"unknown backend {name!r}")


def available_backends() -> tuple[str, ...]:
    try:
        from . import _census_core  # noqa: F401

        return ("cython", "python")
    except ImportError:
        return ("python",)
