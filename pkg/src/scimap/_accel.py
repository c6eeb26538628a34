"""Backend switch for the compiled kernels.

Every hot loop in the package is written once as a numba-compatible
function. With numba active the compiled dispatcher runs; with
``SCIMAP_DISABLE_NUMBA=1`` (or numba missing) the same function runs as
plain Python over numpy arrays, and kernels that have a vectorised numpy
formulation use that instead.
"""
from __future__ import annotations

import contextlib
import os

try:
    import numba

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    NUMBA_AVAILABLE = False

_TRUTHY = {"1", "true", "yes", "on"}

_state = {
    "numba": NUMBA_AVAILABLE
    and os.environ.get("SCIMAP_DISABLE_NUMBA", "").strip().lower() not in _TRUTHY
}


def numba_enabled() -> bool:
    return _state["numba"]


def backend() -> str:
    return "numba" if _state["numba"] else "numpy"


def set_backend(name: str) -> None:
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not NUMBA_AVAILABLE:
        raise RuntimeError("numba is not installed")
    _state["numba"] = name == "numba"


@contextlib.contextmanager
def use_backend(name: str):
    previous = backend()
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def kernel(fn):
    """Compile ``fn`` lazily with numba; keep the Python original reachable."""
    if not NUMBA_AVAILABLE:
        fn.py_func = fn
        return fn
    return numba.njit(cache=True, nogil=True)(fn)


def pick(compiled):
    """Return the callable for the active backend."""
    return compiled if _state["numba"] else compiled.py_func
