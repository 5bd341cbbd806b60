"""Primal log-barrier method for affine linear matrix inequalities.

Solves ``max c.v  s.t.  Z(v) = F0 + sum_k v_k F_k >= 0`` (PSD) with optional
sign constraints ``sign_k * v_k >= 0``, following the central path of

    f_mu(v) = c.v / mu + logdet Z(v) + sum_{signed k} log(sign_k v_k)

with damped Newton steps.  At a centered point the dual pair
``S = mu Z^{-1}``, ``u_k = mu / |v_k|`` satisfies
``c_k + <S, F_k> + sign_k u_k = 0`` and the duality gap is
``mu * (order + number of signed variables)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.linalg import solve_triangular

from ..config import TOL, Tolerances
from ..errors import NumericalError
from ..kernels import SparseBasis, cholesky_raw
from ..linalg import eigen_sym

STALL_MU = 1e-6


def chol_or_none(m):
    L, pivot, _ = cholesky_raw(m)
    return None if pivot >= 0 else L


def chol_inverse(L):
    """``(L L^T)^{-1}`` from a lower Cholesky factor."""
    Linv = solve_triangular(L, np.eye(L.shape[0]), lower=True)
    return Linv.T @ Linv


def solve_spd(h, g):
    # symmetric diagonal equilibration first: barrier Hessians are badly scaled
    d = np.diag(h).copy()
    if np.any(d <= 0):
        return None
    d = 1.0 / np.sqrt(d)
    hs = h * d[:, None] * d[None, :]
    L, pivot, _ = cholesky_raw(hs)
    if pivot >= 0:
        # tiny diagonal shift before giving up
        L, pivot, _ = cholesky_raw(hs + 1e-12 * np.eye(h.shape[0]))
        if pivot >= 0:
            return None
    y = solve_triangular(L, d * g, lower=True)
    return d * solve_triangular(L.T, y, lower=False)


def polish_dual(project, c, signs, z, u, v, mu, s_raw=None):
    """Exactly feasible dual pair supported where complementarity predicts.

    The optimal dual ``S`` lives on the near-null space ``V`` of the primal
    slack ``Z``, so ``S = V M V^T``.  Starting from ``M0 = V^T S V`` (``S``
    defaults to ``mu Z^{-1}``) a minimum-norm correction solves
    ``c_k + <M, V^T F_k V> + sign_k u_k = 0``, with ``u`` kept only on
    sign constraints that are active.  ``project(V)`` returns the stack of
    ``V^T F_k V``.  Returns ``(S, u, residual)`` or None if the corrected
    pair is not PSD / nonnegative.
    """
    d = eigen_sym(z)
    cut = np.sqrt(mu) * max(1.0, float(np.max(np.abs(d.eigenvalues))))
    keep = d.eigenvalues < cut
    if not keep.any():
        return None
    V = d.eigenvectors[:, keep]
    k = V.shape[1]
    G = project(V).reshape(len(c), k * k)
    active = (signs != 0) & (np.abs(v) < np.sqrt(mu))
    cols = [G]
    if active.any():
        cols.append(np.diag(signs)[:, active])
    A = np.hstack(cols)
    if s_raw is None:
        m0 = mu * np.diag(1.0 / d.eigenvalues[keep])
    else:
        m0 = V.T @ s_raw @ V
    z0 = np.concatenate([m0.ravel(), u[active]])
    r0 = -np.asarray(c, dtype=float) - A @ z0
    delta = np.linalg.lstsq(A, r0, rcond=None)[0]
    zz = z0 + delta
    M = zz[: k * k].reshape(k, k)
    M = 0.5 * (M + M.T)
    ua = zz[k * k:]
    uu = np.zeros_like(u)
    uu[active] = ua
    resid = float(np.max(np.abs(-np.asarray(c) - A @ np.concatenate([M.ravel(), ua]))))
    if np.any(ua < 0) or eigen_sym(M).lambda_min < 0:
        return None
    S = V @ M @ V.T
    return 0.5 * (S + S.T), uu, resid


def _sparse_projector(basis: SparseBasis):
    def project(V):
        prod = basis.vals[:, None, None] * V[basis.rows][:, :, None] * V[basis.cols][:, None, :]
        k = V.shape[1]
        out = np.zeros((basis.size, k, k))
        np.add.at(out, basis.owner(), prod)
        return 0.5 * (out + out.transpose(0, 2, 1))
    return project


@dataclass
class LmiProblem:
    f0: np.ndarray
    basis: SparseBasis
    c: np.ndarray
    signs: np.ndarray  # +1, -1 or 0 (free) per variable

    def __post_init__(self):
        self.f0 = np.asarray(self.f0, dtype=float)
        self.c = np.asarray(self.c, dtype=float)
        self.signs = np.asarray(self.signs, dtype=float)
        if self.c.shape != (self.basis.size,) or self.signs.shape != (self.basis.size,):
            raise ValueError("objective and sign vectors must match the number of variables")
        if self.f0.shape != (self.basis.order, self.basis.order):
            raise ValueError("constant term has the wrong order")

    def slack(self, v):
        return self.basis.assemble(self.f0, v)

    @property
    def nu(self) -> int:
        return self.basis.order + int(np.count_nonzero(self.signs))


@dataclass
class LmiSolution:
    v: np.ndarray
    z: np.ndarray
    s: np.ndarray
    u: np.ndarray
    mu: float
    primal: float
    dual: float
    gap: float
    dual_residual: float
    iterations: int
    stages: int
    status: str = "optimal"
    trace: list = field(default_factory=list, repr=False)


def _newton_data(p: LmiProblem, v, mu, signed):
    z = p.slack(v)
    L = chol_or_none(z)
    if L is None:
        return None
    r = chol_inverse(L)
    g = p.c / mu + p.basis.inner(r)
    h = p.basis.hessian(r)
    if signed.any():
        g[signed] += 1.0 / v[signed]
        h[signed, signed] += 1.0 / v[signed] ** 2
    return z, r, g, h


def _feasible(p: LmiProblem, v, signed) -> bool:
    if signed.any() and np.any(p.signs[signed] * v[signed] <= 0.0):
        return False
    return chol_or_none(p.slack(v)) is not None


def solve_lmi(p: LmiProblem, v0, tol: Tolerances = TOL,
              stop: Callable[[np.ndarray, float], bool] | None = None,
              center_tol: float = 1e-10, polish: bool = True) -> LmiSolution:
    """Follow the central path from the strictly feasible point ``v0``.

    ``stop(v, mu)`` is consulted after each completed stage; returning True
    ends the run early with status ``"stopped"``.  A stage below
    ``mu = 1e-6`` that stops making Newton progress ends the run with
    status ``"stalled"`` at its (still strictly feasible) iterate.
    """
    v = np.array(v0, dtype=float)
    signed = p.signs != 0
    if not _feasible(p, v, signed):
        raise ValueError("starting point is not strictly feasible")
    mu = tol.mu_start
    iterations = 0
    stages = 0
    trace = []
    status = "optimal"
    while True:
        stages += 1
        # late stages may stall at the floating-point floor of the Hessian
        late = mu <= STALL_MU
        prev, flat, stalled = math.inf, 0, False
        for step in range(tol.newton_max_steps * (4 if stages == 1 else 1)):
            data = _newton_data(p, v, mu, signed)
            if data is None:
                raise NumericalError("iterate left the feasible region", mu=mu)
            _, _, g, h = data
            dv = solve_spd(h, g)
            if dv is None or not np.all(np.isfinite(dv)):
                if late:
                    stalled = True
                    break
                raise NumericalError("Newton system is singular", mu=mu,
                                     gradient_norm=float(np.linalg.norm(g)))
            dec2 = float(g @ dv)
            iterations += 1
            if dec2 <= center_tol:
                break
            flat = flat + 1 if dec2 > 0.5 * prev else 0
            prev = dec2
            if late and flat >= 5 and dec2 <= 1e-4:
                stalled = True
                break
            dec = math.sqrt(max(dec2, 0.0))
            t = 1.0 if dec < 0.25 else 1.0 / (1.0 + dec)
            while not _feasible(p, v + t * dv, signed):
                t *= 0.5
                if t < 1e-14:
                    break
            if t < 1e-14:
                if late:
                    stalled = True
                    break
                raise NumericalError("line search stalled", mu=mu, decrement=dec)
            v = v + t * dv
        else:
            if not late:
                raise NumericalError("Newton iteration cap reached", mu=mu, decrement=dec2)
            stalled = True
        trace.append((mu, float(p.c @ v)))
        if stalled:
            status = "stalled"
            break
        if stop is not None and stop(v, mu):
            status = "stopped"
            break
        if mu <= tol.mu_final * (1.0 + 1e-12):
            break
        if stages >= tol.max_stages:
            raise NumericalError("barrier stage cap reached", mu=mu)
        mu = max(mu / tol.mu_factor, tol.mu_final)

    z = p.slack(v)
    L = chol_or_none(z)
    r = chol_inverse(L)
    s = mu * r
    u = np.zeros_like(v)
    u[signed] = mu / np.abs(v[signed])
    resid = float(np.max(np.abs(p.c + p.basis.inner(s) + p.signs * u), initial=0.0))
    polished = polish_dual(_sparse_projector(p.basis), p.c, p.signs, z, u, v, mu) if polish else None
    if polished is not None and polished[2] < resid:
        s, u, resid = polished
    primal = float(p.c @ v)
    dual = float(np.sum(s * p.f0))
    return LmiSolution(v=v, z=z, s=s, u=u, mu=mu, primal=primal, dual=dual,
                       gap=dual - primal, dual_residual=resid,
                       iterations=iterations, stages=stages, status=status, trace=trace)
