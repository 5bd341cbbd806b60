"""Hot inner loops, each with a numba-compiled and a numpy implementation.

The public wrappers dispatch on :func:`spectral_gauge._backend.current`;
the ``*_numba`` / ``*_numpy`` names are importable for tests and benchmarks.
"""

from .cholesky import cholesky_numba, cholesky_numpy, cholesky_raw
from .jacobi import jacobi_eigh, jacobi_numba, jacobi_numpy
from .lmi import SparseBasis, hessian_numba, hessian_numpy
from .stable import (
    max_weight_stable_numba,
    max_weight_stable_numpy,
    maximal_filter_numba,
    maximal_filter_numpy,
    stable_masks,
    stable_masks_numba,
    stable_masks_numpy,
)

__all__ = [
    "SparseBasis",
    "cholesky_numba",
    "cholesky_numpy",
    "cholesky_raw",
    "hessian_numba",
    "hessian_numpy",
    "jacobi_eigh",
    "jacobi_numba",
    "jacobi_numpy",
    "max_weight_stable_numba",
    "max_weight_stable_numpy",
    "maximal_filter_numba",
    "maximal_filter_numpy",
    "stable_masks",
    "stable_masks_numba",
    "stable_masks_numpy",
]
