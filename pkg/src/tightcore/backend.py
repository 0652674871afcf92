"""Kernel backend selection.

``TIGHTCORE_BACKEND`` picks the implementation of the hot reduction
kernel at import time:

* ``numba`` - require the JIT kernels (error if numba is missing);
* ``numpy`` - force the pure-numpy fallback;
* ``auto`` / unset - numba when importable, numpy otherwise.

``set_backend()`` switches at runtime (used by the benchmark and by
tests that compare the two paths).
"""

import os

_current = None


def _load(name: str):
    if name == "numpy":
        from . import _kernels_numpy as mod
        return mod
    if name == "numba":
        from . import _kernels_numba as mod
        return mod
    raise ValueError(f"unknown backend {name!r}")


def set_backend(name: str):
    """Force a backend ('numba' or 'numpy'); returns the module."""
    global _current
    _current = _load(name)
    return _current


def kernels():
    """The active kernel module (selecting one on first use)."""
    global _current
    if _current is None:
        choice = os.environ.get("TIGHTCORE_BACKEND", "auto").lower()
        if choice in ("numba", "numpy"):
            _current = _load(choice)
        else:
            try:
                _current = _load("numba")
            except ImportError:
                _current = _load("numpy")
    return _current


def backend_name() -> str:
    return kernels().NAME
