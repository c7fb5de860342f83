"""Kernel backend selection.

POSETSHUFFLE_BACKEND=numba|numpy|auto picks the implementation; auto (the
default) takes numba when it imports and falls back to numpy otherwise.
Resolved lazily on first use so tests and benchmarks can force either side
with use_backend().
"""

import os

from . import _kernels_numpy

_active = None
_active_name = None


def _load(name):
    if name in ("auto", ""):
        try:
            from . import _kernels_numba

            return _kernels_numba, "numba"
        except ImportError:
            return _kernels_numpy, "numpy"
    if name == "numba":
        from . import _kernels_numba

        return _kernels_numba, "numba"
    if name == "numpy":
        return _kernels_numpy, "numpy"
    raise ValueError(f"unknown backend {name!r}; use numba, numpy or auto")


def use_backend(name):
    """Force a backend by name; returns the module actually loaded."""
    global _active, _active_name
    _active, _active_name = _load(name)
    return _active


def kernels():
    global _active, _active_name
    if _active is None:
        _active, _active_name = _load(os.environ.get("POSETSHUFFLE_BACKEND", "auto"))
    return _active


def backend_name():
    kernels()
    return _active_name
