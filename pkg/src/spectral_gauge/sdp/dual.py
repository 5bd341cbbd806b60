"""Independent feasibility check for dual certificates of the diagonal LMI."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from ..linalg import as_symmetric, gram_root, lambda_min


class DualReport(NamedTuple):
    lambda_min: float
    margin: float  # min_i diag(B Y B)_i - w_i
    objective: float  # trace(Y)

    def feasible(self, tol: float = 1e-8) -> bool:
        return self.lambda_min >= -tol and self.margin >= -tol


def check_dual_feasible(Y, w, a=None, B=None) -> DualReport:
    """Residuals of ``Y`` for ``min tr Y  s.t.  diag(B Y B) >= w, Y >= 0``.

    ``B`` is ``(I + A~)^{1/2}``; pass either the generalized adjacency ``a``
    or ``B`` itself.
    """
    Y = as_symmetric(Y)
    w = np.asarray(w, dtype=float)
    if B is None:
        if a is None:
            raise ValueError("need the matrix A or the root B")
        B = gram_root(a)
    B = np.asarray(B, dtype=float)
    if Y.shape != B.shape or w.shape != (B.shape[0],):
        raise ValueError("dimension mismatch")
    d = np.einsum("ij,jk,ki->i", B, Y, B)
    return DualReport(lambda_min(Y), float(np.min(d - w)), float(np.trace(Y)))
