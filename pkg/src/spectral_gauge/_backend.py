"""Kernel backend selection.

Hot loops are written twice: a numba-compiled loop and a numpy path.
``SPECTRAL_GAUGE_BACKEND=numpy`` forces the numpy path; the default is
numba whenever it imports cleanly.
"""

from __future__ import annotations

import contextlib
import os

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None
    HAVE_NUMBA = False

_VALID = ("numba", "numpy")


def _initial_backend() -> str:
    requested = os.environ.get("SPECTRAL_GAUGE_BACKEND", "").strip().lower()
    if requested == "numpy":
        return "numpy"
    if requested not in ("", "numba"):
        raise ValueError(f"SPECTRAL_GAUGE_BACKEND must be one of {_VALID}, got {requested!r}")
    return "numba" if HAVE_NUMBA else "numpy"


_current = _initial_backend()


def current() -> str:
    return _current


def set_backend(name: str) -> None:
    global _current
    if name not in _VALID:
        raise ValueError(f"backend must be one of {_VALID}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    _current = name


@contextlib.contextmanager
def use_backend(name: str):
    previous = _current
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def njit(fn):
    """Compile ``fn`` with numba when available, else return it unchanged."""
    if HAVE_NUMBA:
        return numba.njit(cache=True)(fn)
    return fn
