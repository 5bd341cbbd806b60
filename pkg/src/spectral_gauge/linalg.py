"""Dense symmetric linear algebra built on the Jacobi and Cholesky kernels."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .config import TOL
from .errors import NotPositiveDefiniteError, NotPSDError, NumericalError
from .kernels import cholesky_raw, jacobi_eigh

__all__ = [
    "EigenDecomposition",
    "Tilde",
    "as_symmetric",
    "eigen_sym",
    "lambda_max",
    "lambda_min",
    "top_eigenpair",
    "psd_sqrt",
    "pinv",
    "cholesky",
    "is_psd",
    "normalize_tilde",
    "tilde",
    "gram_root",
]


def as_symmetric(m, atol: float = 1e-10) -> np.ndarray:
    """Copy ``m`` as a float matrix with exactly equal mirrored entries."""
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    scale = 1.0 + (np.max(np.abs(a)) if a.size else 0.0)
    if a.size and np.max(np.abs(a - a.T)) > atol * scale:
        raise ValueError("matrix is not symmetric")
    return 0.5 * (a + a.T)


class EigenDecomposition(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int
    offdiag: float

    @property
    def lambda_min(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1])

    def reconstruct(self) -> np.ndarray:
        q = self.eigenvectors
        return (q * self.eigenvalues) @ q.T

    def apply(self, fn) -> np.ndarray:
        """Spectral function ``Q fn(Lambda) Q^T``."""
        q = self.eigenvectors
        return (q * fn(self.eigenvalues)) @ q.T


def eigen_sym(m, tol: float | None = None, max_sweeps: int | None = None) -> EigenDecomposition:
    """Eigenvalues ascending with orthonormal eigenvectors as columns."""
    a = as_symmetric(m)
    tol = TOL.jacobi_offdiag if tol is None else tol
    max_sweeps = TOL.jacobi_max_sweeps if max_sweeps is None else max_sweeps
    if a.shape[0] == 0:
        return EigenDecomposition(np.zeros(0), np.zeros((0, 0)), 0, 0.0)
    values, vectors, sweeps, off, ok = jacobi_eigh(a, tol, max_sweeps)
    if not ok:
        raise NumericalError("Jacobi iteration did not converge",
                             sweeps=int(sweeps), offdiag_residual=float(off))
    return EigenDecomposition(values, vectors, int(sweeps), float(off))


def lambda_max(m) -> float:
    return eigen_sym(m).lambda_max


def lambda_min(m) -> float:
    return eigen_sym(m).lambda_min


def top_eigenpair(m) -> tuple[float, np.ndarray]:
    d = eigen_sym(m)
    return d.lambda_max, d.eigenvectors[:, -1].copy()


def psd_sqrt(m, tol_psd: float | None = None, rank_tol: float | None = None) -> np.ndarray:
    """Unique PSD square root; eigenvalues in ``[-tol_psd, 0]`` are clamped.

    Eigenvalues below the ``pinv`` rank cut are also set to zero, so that
    rounding noise in a null space (``~1e-16``) does not turn into ``1e-8``
    after the square root.
    """
    tol_psd = TOL.tol_psd if tol_psd is None else tol_psd
    rank_tol = TOL.rank_tol if rank_tol is None else rank_tol
    d = eigen_sym(m)
    if d.lambda_min < -tol_psd:
        raise NotPSDError(d.lambda_min)
    n = d.eigenvalues.shape[0]
    cut = rank_tol * float(np.max(np.abs(d.eigenvalues), initial=0.0)) * n
    r = d.apply(lambda v: np.sqrt(np.where(v > cut, v, 0.0)))
    return 0.5 * (r + r.T)


def pinv(m, rank_tol: float | None = None) -> np.ndarray:
    """Moore-Penrose pseudoinverse of a symmetric matrix."""
    rank_tol = TOL.rank_tol if rank_tol is None else rank_tol
    d = eigen_sym(m)
    n = d.eigenvalues.shape[0]
    if n == 0:
        return np.zeros((0, 0))
    cut = rank_tol * np.max(np.abs(d.eigenvalues)) * n
    keep = np.abs(d.eigenvalues) > cut
    inv = np.zeros_like(d.eigenvalues)
    inv[keep] = 1.0 / d.eigenvalues[keep]
    r = (d.eigenvectors * inv) @ d.eigenvectors.T
    return 0.5 * (r + r.T)


def cholesky(m) -> np.ndarray:
    """Lower-triangular ``L`` with ``L L^T = m``."""
    a = as_symmetric(m)
    L, pivot, value = cholesky_raw(a)
    if pivot >= 0:
        raise NotPositiveDefiniteError(int(pivot), float(value))
    return L


def is_psd(m, tol: float | None = None) -> bool:
    tol = TOL.tol_psd if tol is None else tol
    return lambda_min(m) >= -tol


class Tilde(NamedTuple):
    matrix: np.ndarray
    lambda_min: float
    treated_as_zero: bool


def tilde(a, tiny: float | None = None) -> Tilde:
    """``A / (-lambda_min(A))``, or zero when ``-lambda_min`` is negligible.

    ``treated_as_zero`` flags a nonzero input whose smallest eigenvalue was
    too close to zero to normalize by.
    """
    tiny = TOL.tiny_lambda if tiny is None else tiny
    m = as_symmetric(getattr(a, "matrix", a))
    if not np.any(m):
        return Tilde(np.zeros_like(m), 0.0, False)
    lmin = lambda_min(m)
    if -lmin <= tiny:
        return Tilde(np.zeros_like(m), lmin, True)
    return Tilde(m / (-lmin), lmin, False)


def normalize_tilde(a) -> np.ndarray:
    return tilde(a).matrix


def gram_root(a) -> np.ndarray:
    """``(I + A~)^{1/2}``; its columns ``b_i`` have unit norm."""
    t = tilde(a).matrix
    return psd_sqrt(np.eye(t.shape[0]) + t)
