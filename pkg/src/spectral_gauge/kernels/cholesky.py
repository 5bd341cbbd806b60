"""Dense Cholesky factorization reporting the first failing pivot."""

from __future__ import annotations

import math

import numpy as np

from .. import _backend


def _cholesky_loop(a):
    n = a.shape[0]
    L = np.zeros((n, n))
    for j in range(n):
        s = a[j, j]
        for k in range(j):
            s -= L[j, k] * L[j, k]
        if not s > 0.0:
            return L, j, s
        d = math.sqrt(s)
        L[j, j] = d
        for i in range(j + 1, n):
            t = a[i, j]
            for k in range(j):
                t -= L[i, k] * L[j, k]
            L[i, j] = t / d
    return L, -1, 0.0


_cholesky_loop_jit = _backend.njit(_cholesky_loop)


def _cholesky_columns(a):
    n = a.shape[0]
    L = np.zeros((n, n))
    for j in range(n):
        row = L[j, :j]
        s = a[j, j] - row @ row
        if not s > 0.0:
            return L, j, s
        d = math.sqrt(s)
        L[j, j] = d
        L[j + 1:, j] = (a[j + 1:, j] - L[j + 1:, :j] @ row) / d
    return L, -1, 0.0


def cholesky_numba(a):
    return _cholesky_loop_jit(np.ascontiguousarray(a, dtype=np.float64))


def cholesky_numpy(a):
    return _cholesky_columns(np.ascontiguousarray(a, dtype=np.float64))


def cholesky_raw(a):
    """Return ``(L, failed_pivot, pivot_value)``; ``failed_pivot`` is -1 on success."""
    if _backend.current() == "numba":
        return cholesky_numba(a)
    return cholesky_numpy(a)
