"""Convex quadratic upper bound on the weighted stability number.

    L(A, w) = sup { 2<sqrt(w), x> - x^T (I + A~) x :  x >= 0, x supported on supp(w) }

The supremum is finite iff no ``d >= 0`` on the support has
``(I + A~)_SS d = 0`` and ``<sqrt(w), d> > 0``.  When finite, the dual is

    min ||y||^2  s.t.  ((I + A~)^{1/2} y)_i >= sqrt(w_i)  for i in supp(w)

and ``y y^T`` is feasible for the dual SDP of ``xi``.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from ..errors import NumericalError
from ..graph import as_weights
from ..linalg import eigen_sym, psd_sqrt
from ..lp import LinearProgram, solve_lp
from ..results import UNBOUNDED, BoundResult
from ..sdp import check_dual_feasible
from .spectral import _gram, _matrix, xi

NULL_TOL = 1e-9
RECESSION_TOL = 1e-10


def recession_direction(M, sw):
    """``d >= 0`` with ``d^T M d <= 1e-10`` and ``<sw, d> = 1``, or None.

    Searches the numerical null space ``N`` of the PSD matrix ``M`` with the
    LP ``max <N^T sw, c>  s.t.  N c >= 0, -1 <= c <= 1``.
    """
    d = eigen_sym(M)
    cut = NULL_TOL * max(1.0, d.lambda_max)
    N = d.eigenvectors[:, d.eigenvalues <= cut]
    if N.shape[1] == 0:
        return None
    k = N.shape[1]
    lp = LinearProgram(N.T @ sw, -N, np.zeros(N.shape[0]), "<=", sense="max",
                       lower=-np.ones(k), upper=np.ones(k))
    sol = solve_lp(lp)
    if not sol.optimal or sol.objective <= 1e-9:
        return None
    dv = N @ sol.x
    dv[dv < 0] = 0.0
    dv /= float(sw @ dv)
    if float(dv @ M @ dv) > RECESSION_TOL:
        return None
    return dv


def _objective(M, sw, x):
    return 2.0 * float(sw @ x) - float(x @ M @ x)


def _kkt_residual(M, sw, x):
    r = M @ x - sw  # needs r >= 0, with r_i = 0 where x_i > 0
    return max(float(np.max(-r, initial=0.0)), float(np.max(np.abs(r[x > 0]), initial=0.0)))


def _polish(M, sw, x):
    """Solve the KKT equations exactly on the support of ``x``."""
    P = x > 1e-9 * max(1.0, float(np.max(x)))
    if not P.any():
        return None
    z = np.zeros_like(x)
    z[P] = np.linalg.lstsq(M[np.ix_(P, P)], sw[P], rcond=None)[0]
    if np.any(z[P] <= 0):
        return None
    return z


def active_set(M, sw, max_iter: int | None = None):
    """Lawson-Hanson style active-set method for
    ``min x^T M x - 2 <sw, x>`` over ``x >= 0``; finite for bounded problems."""
    n = sw.shape[0]
    x = np.zeros(n)
    P = np.zeros(n, dtype=bool)
    tol = 1e-13 * (1.0 + float(np.max(sw)))
    for _ in range(max_iter or 3 * n + 10):
        r = sw - M @ x
        r[P] = -np.inf
        j = int(np.argmax(r))
        if P.all() or r[j] <= tol:
            break
        P[j] = True
        while True:
            z = np.zeros(n)
            z[P] = np.linalg.lstsq(M[np.ix_(P, P)], sw[P], rcond=None)[0]
            bad = P & (z <= 0)
            if not bad.any():
                x = z
                break
            # step back to the boundary and drop the coordinates that hit it
            step = float(np.min(x[bad] / (x[bad] - z[bad])))
            x = x + step * (z - x)
            P &= x > 1e-15
            x[~P] = 0.0
            if not P.any():
                break
    return x


def projected_gradient(M, sw, max_iter: int = 2000, tol: float = 1e-13):
    """Accelerated projected gradient with Armijo backtracking for
    ``min x^T M x - 2 <sw, x>`` over ``x >= 0``; restarts when the
    objective increases, and every 25 steps tries to finish exactly on the
    current support.  Returns ``(x, iterations)``."""
    n = sw.shape[0]
    x = np.zeros(n)
    y = x.copy()
    step = 0.5 / max(float(np.max(np.abs(M).sum(axis=1))), 1e-300)
    f = lambda v: float(v @ M @ v) - 2.0 * float(sw @ v)
    fx = 0.0
    theta = 1.0
    for it in range(1, max_iter + 1):
        gy = 2.0 * (M @ y) - 2.0 * sw
        fy = f(y)
        while True:
            xn = np.maximum(y - step * gy, 0.0)
            dx = xn - y
            if f(xn) <= fy + gy @ dx + (0.5 / step) * (dx @ dx) + 1e-15 * abs(fy):
                break
            step *= 0.5
        fn = f(xn)
        if fn > fx:
            # restart the momentum
            theta = 1.0
            y = x.copy()
            continue
        tn = 0.5 * (1.0 + np.sqrt(1.0 + 4.0 * theta * theta))
        y = xn + ((theta - 1.0) / tn) * (xn - x)
        theta = tn
        moved = float(np.max(np.abs(xn - x)))
        x, fx = xn, fn
        step *= 1.5
        if it % 25 == 0:
            # once the support is identified the KKT system finishes the job
            z = _polish(M, sw, x)
            if z is not None and _kkt_residual(M, sw, z) <= 1e-11 * (1.0 + float(np.max(sw))):
                return z, it
        if moved <= tol * (1.0 + float(np.max(x))):
            return x, it
    return x, max_iter


def luz(a, w=None, gap_tol: float = 1e-6) -> BoundResult:
    """The bound ``L(A, w)``; status ``unbounded`` with a recession direction
    when the supremum is infinite."""
    C, t = _gram(a)
    n = C.shape[0]
    w = as_weights(w, n)
    S = np.flatnonzero(w > 0)
    if S.size == 0:
        return BoundResult("luz", 0.0, {"x": np.zeros(n), "y": np.zeros(n)}, {"gap": 0.0})
    M = C[np.ix_(S, S)]
    sw = np.sqrt(w[S])
    d = recession_direction(M, sw)
    if d is not None:
        full = np.zeros(n)
        full[S] = d
        return BoundResult("luz", None, {"direction": full},
                           {"curvature": float(d @ M @ d), "slope": float(sw @ d),
                            "treated_as_zero": t.treated_as_zero}, status=UNBOUNDED)

    xs, iters = projected_gradient(M, sw)
    for z in (_polish(M, sw, xs), None):
        if z is None and _kkt_residual(M, sw, xs) > 1e-11 * (1.0 + float(np.max(sw))):
            z = active_set(M, sw)
        if z is not None and _kkt_residual(M, sw, z) < _kkt_residual(M, sw, xs):
            xs = z
    # best multiple of x along its ray
    q = float(xs @ M @ xs)
    if q > 0:
        xs = xs * (float(sw @ xs) / q)
    primal = _objective(M, sw, xs)

    B = psd_sqrt(C)
    x = np.zeros(n)
    x[S] = xs
    y = B[:, S] @ xs
    r = B[S] @ y  # equals M xs
    if np.any(r <= 0):
        raise NumericalError("dual certificate has a nonpositive constraint value")
    y = y * float(np.max(sw / r))
    dual = float(y @ y)
    gap = dual - primal
    if gap > gap_tol * (1.0 + abs(primal)):
        raise NumericalError("duality gap above tolerance", gap=gap, primal=primal)
    return BoundResult("luz", dual, {"x": x, "y": y, "primal_value": primal},
                       {"gap": gap, "iterations": iters, "kkt": _kkt_residual(M, sw, xs),
                        "treated_as_zero": t.treated_as_zero})


class LuzComparison(NamedTuple):
    xi: BoundResult
    luz: BoundResult
    nonneg: bool
    checks: dict  # name -> (passed, measured quantity)

    @property
    def passed(self) -> bool:
        return all(ok for ok, _ in self.checks.values())


def xi_vs_luz(a, w=None) -> LuzComparison:
    """Check ``xi <= luz`` and, for nonnegative ``A``, equality together
    with the rank-one dual ``y y^T`` built from the Luz dual."""
    m = _matrix(a)
    n = m.shape[0]
    w = as_weights(w, n)
    rx = xi(m, w)
    rl = luz(m, w)
    nonneg = bool(np.all(m >= 0))
    checks = {}
    if rl.is_infinite:
        checks["xi_le_luz"] = (True, float("inf"))
    else:
        checks["xi_le_luz"] = (rx.value <= rl.value + 1e-6, rl.value - rx.value)
    if nonneg:
        diff = abs(rx.value - float(rl))
        checks["xi_eq_luz"] = (diff <= 1e-5 * (1.0 + rx.value), diff)
        if not rl.is_infinite:
            y = rl.certificate["y"]
            rep = check_dual_feasible(np.outer(y, y), w, a=m)
            dev = abs(rep.objective - rx.value)
            checks["rank_one_dual"] = (rep.feasible(1e-8) and dev <= 1e-5 * (1.0 + rx.value), dev)
    return LuzComparison(rx, rl, nonneg, checks)
