"""Barrier solver for ``max <w, x>  s.t.  sum_i x_i b_i b_i^T <= I,  x >= 0``.

Here ``b_i`` are the columns of a symmetric ``B`` with unit diagonal in
``B^2`` (``B = (I + A~)^{1/2}``), so ``sum_i x_i b_i b_i^T = B Diag(x) B``.
The dual is ``min tr Y  s.t.  diag(B Y B) >= w,  Y >= 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..config import TOL, Tolerances
from ..errors import NumericalError
from ..linalg import lambda_max, lambda_min
from .core import chol_inverse, chol_or_none, solve_spd


@dataclass
class SdpSolution:
    x: np.ndarray
    Y: np.ndarray
    primal: float
    dual: float
    gap: float
    iterations: int
    stages: int
    status: str = "optimal"
    slack_min: float = 0.0
    dual_margin: float = 0.0


@dataclass(frozen=True)
class DiagonalLmiProblem:
    B: np.ndarray
    w: np.ndarray

    def __post_init__(self):
        B = np.asarray(self.B, dtype=float)
        w = np.asarray(self.w, dtype=float)
        if B.ndim != 2 or B.shape[0] != B.shape[1] or w.shape != (B.shape[0],):
            raise ValueError("B must be square with one weight per column")
        if np.any(w < 0):
            raise ValueError("weights must be nonnegative")
        object.__setattr__(self, "B", 0.5 * (B + B.T))
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return self.B.shape[0]

    def slack(self, x):
        return np.eye(self.n) - (self.B * x) @ self.B


def repair_dual(B, Y, w):
    """Make ``Y`` satisfy ``diag(B Y B) >= w`` at small extra trace.

    Two exact repairs are compared: adding ``t I`` (valid because
    ``diag(B^2) = 1``) and scaling ``Y`` up by the worst ratio.
    """
    d = np.einsum("ij,jk,ki->i", B, Y, B)
    t = max(0.0, float(np.max(w - d, initial=0.0)))
    shifted = Y + t * np.eye(B.shape[0])
    pos = w > 0
    if t > 0.0 and np.all(d[pos] > 0):
        ratio = float(np.max(w[pos] / d[pos]))
        if (ratio - 1.0) * np.trace(Y) < t * B.shape[0]:
            return ratio * Y, t
    return shifted, t


def solve_diagonal_lmi(p: DiagonalLmiProblem, tol: Tolerances = TOL,
                       center_tol: float = 1e-10) -> SdpSolution:
    n = p.n
    scale = float(np.max(p.w, initial=0.0))
    if scale == 0.0:
        return SdpSolution(np.zeros(n), np.zeros((n, n)), 0.0, 0.0, 0.0, 0, 0, slack_min=1.0)
    w = p.w / scale
    B = p.B
    Bsq = B @ B
    x = np.full(n, 0.5 / max(lambda_max(Bsq), 1e-300))
    mu = tol.mu_start
    iterations = stages = 0
    best = None
    while True:
        stages += 1
        last = mu <= tol.mu_final * (1.0 + 1e-12)
        ctol = min(center_tol, 1e-14) if mu <= 100 * tol.mu_final else center_tol
        prev = math.inf
        for _ in range(tol.newton_max_steps * (4 if stages == 1 else 1)):
            L = chol_or_none(p.slack(x))
            if L is None:
                raise NumericalError("iterate left the feasible region", mu=mu)
            M = B @ chol_inverse(L) @ B
            g = w / mu - np.diag(M) + 1.0 / x
            h = M * M + np.diag(1.0 / x ** 2)
            dx = solve_spd(h, g)
            iterations += 1
            if dx is None or not np.all(np.isfinite(dx)):
                raise NumericalError("Newton system is singular", mu=mu,
                                     gradient_norm=float(np.linalg.norm(g)))
            dec2 = float(g @ dx)
            if dec2 <= ctol or (dec2 <= center_tol and dec2 > 0.25 * prev):
                break
            prev = dec2
            dec = math.sqrt(max(dec2, 0.0))
            t = 1.0 if dec < 0.25 else 1.0 / (1.0 + dec)
            while True:
                xn = x + t * dx
                if np.all(xn > 0) and chol_or_none(p.slack(xn)) is not None:
                    break
                t *= 0.5
                if t < 1e-14:
                    raise NumericalError("line search stalled", mu=mu, decrement=dec)
            x = xn
        else:
            raise NumericalError("Newton iteration cap reached", mu=mu, decrement=dec2)
        if mu <= 1000 * tol.mu_final:
            # the certificate degrades as S nears singularity, so keep the best
            S = p.slack(x)
            Y = mu * chol_inverse(chol_or_none(S))
            Y, _ = repair_dual(B, 0.5 * (Y + Y.T), w)
            if best is None or np.trace(Y) < np.trace(best):
                best = Y
        if last:
            # continue below mu_final only while the certified gap is too wide
            if np.trace(best) - w @ x <= tol.gap_tol * (1.0 + w @ x):
                break
        if stages >= tol.max_stages:
            if last:
                break
            raise NumericalError("barrier stage cap reached", mu=mu)
        mu = mu / tol.mu_factor if last else max(mu / tol.mu_factor, tol.mu_final)

    S = p.slack(x)
    Y = best
    primal = float(w @ x)
    dual = float(np.trace(Y))
    gap = dual - primal
    if gap > tol.gap_tol * (1.0 + abs(primal)):
        raise NumericalError("duality gap above tolerance", gap=gap, mu=mu)
    Y = scale * Y
    margin = float(np.min(np.einsum("ij,jk,ki->i", B, Y, B) - p.w))
    return SdpSolution(x=x, Y=Y, primal=scale * primal, dual=scale * dual, gap=scale * gap,
                       iterations=iterations, stages=stages, slack_min=lambda_min(S),
                       dual_margin=margin)
