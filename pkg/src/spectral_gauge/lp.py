"""Dense two-phase tableau simplex for small linear programs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import NumericalError

__all__ = ["LinearProgram", "LpSolution", "solve_lp", "OPTIMAL", "INFEASIBLE", "UNBOUNDED"]

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_RELATIONS = {"<=": "<=", "≤": "<=", "le": "<=", ">=": ">=", "≥": ">=", "ge": ">=",
              "=": "=", "==": "=", "eq": "="}


@dataclass
class LinearProgram:
    """Optimize ``c.x`` subject to ``A[i].x rel[i] b[i]`` and ``lower <= x <= upper``.

    ``lower`` defaults to 0 and may hold ``-inf`` for free variables;
    ``upper`` defaults to ``+inf``.
    """

    c: np.ndarray
    A: np.ndarray
    b: np.ndarray
    relations: Sequence[str] | str = "<="
    sense: str = "max"
    lower: np.ndarray | None = None
    upper: np.ndarray | None = None

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=float).ravel()
        n = self.c.shape[0]
        self.A = np.asarray(self.A, dtype=float).reshape(-1, n)
        m = self.A.shape[0]
        self.b = np.asarray(self.b, dtype=float).ravel()
        if self.b.shape[0] != m:
            raise ValueError("rhs length must match the number of rows")
        rels = [self.relations] * m if isinstance(self.relations, str) else list(self.relations)
        if len(rels) != m:
            raise ValueError("one relation per row required")
        try:
            self.relations = [_RELATIONS[r] for r in rels]
        except KeyError as exc:
            raise ValueError(f"unknown relation {exc.args[0]!r}") from None
        if self.sense not in ("max", "min"):
            raise ValueError("sense must be 'max' or 'min'")
        self.lower = np.zeros(n) if self.lower is None else np.asarray(self.lower, dtype=float).ravel()
        self.upper = np.full(n, np.inf) if self.upper is None else np.asarray(self.upper, dtype=float).ravel()
        if self.lower.shape[0] != n or self.upper.shape[0] != n:
            raise ValueError("bound vectors must match the number of variables")
        for arr in (self.c, self.A, self.b):
            if not np.all(np.isfinite(arr)):
                raise ValueError("LP coefficients must be finite")
        if np.any(self.lower == np.inf) or np.any(self.upper == -np.inf) or np.any(self.lower > self.upper):
            raise ValueError("inconsistent variable bounds")

    @property
    def n(self) -> int:
        return self.c.shape[0]

    @property
    def m(self) -> int:
        return self.A.shape[0]


@dataclass
class LpSolution:
    status: str
    x: np.ndarray | None = None
    duals: np.ndarray | None = None
    objective: float | None = None
    dual_objective: float | None = None
    iterations: int = 0
    bland: bool = False
    ray: np.ndarray | None = field(default=None, repr=False)

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


class _Standard:
    """``min chat.u  s.t.  Ahat u (rel) bhat, u >= 0`` with ``x = shift + P u``."""

    def __init__(self, lp: LinearProgram):
        n = lp.n
        cols, shift = [], np.zeros(n)
        # each original variable maps to one or two nonnegative columns
        for j in range(n):
            lo, hi = lp.lower[j], lp.upper[j]
            if np.isfinite(lo):
                shift[j] = lo
                cols.append((j, 1.0))
            elif np.isfinite(hi):
                shift[j] = hi
                cols.append((j, -1.0))
            else:
                cols.append((j, 1.0))
                cols.append((j, -1.0))
        P = np.zeros((n, len(cols)))
        for k, (j, sgn) in enumerate(cols):
            P[j, k] = sgn
        rows_A = [lp.A @ P]
        rows_b = [lp.b - lp.A @ shift]
        rels = list(lp.relations)
        ub_rows = []
        for j in range(n):
            lo, hi = lp.lower[j], lp.upper[j]
            if np.isfinite(lo) and np.isfinite(hi):
                ub_rows.append(j)
                row = np.zeros(len(cols))
                row[[k for k, (jj, _) in enumerate(cols) if jj == j]] = 1.0
                rows_A.append(row[None, :])
                rows_b.append(np.array([hi - lo]))
                rels.append("<=")
        self.sign = 1.0 if lp.sense == "min" else -1.0
        self.P = P
        self.shift = shift
        self.A = np.vstack(rows_A) if rows_A else np.zeros((0, len(cols)))
        self.b = np.concatenate(rows_b)
        self.rel = rels
        self.c = self.sign * (lp.c @ P)
        self.const = float(lp.c @ shift)
        self.m_user = lp.m


def solve_lp(lp: LinearProgram, max_iterations: int | None = None, tol: float = 1e-10) -> LpSolution:
    """Solve ``lp`` by the two-phase simplex method.

    Pricing is Dantzig's rule; after ``3 * (number of columns)`` consecutive
    degenerate pivots the solver switches to Bland's rule for the rest of
    the run, which cannot cycle.
    """
    std = _Standard(lp)
    A, b = std.A.copy(), std.b.copy()
    m, nu = A.shape
    flip = np.where(b < 0, -1.0, 1.0)
    A *= flip[:, None]
    b *= flip
    rel = []
    for r, f in zip(std.rel, flip):
        if f < 0 and r != "=":
            r = ">=" if r == "<=" else "<="
        rel.append(r)

    # columns: structural | slack/surplus | artificial
    n_slack = sum(r != "=" for r in rel)
    n_art = sum(r != "<=" for r in rel)
    ncol = nu + n_slack + n_art
    T = np.zeros((m + 2, ncol + 1))
    T[:m, :nu] = A
    T[:m, -1] = b
    basis = np.empty(m, dtype=np.int64)
    ident = np.empty(m, dtype=np.int64)
    s = nu
    a = nu + n_slack
    for i, r in enumerate(rel):
        if r == "<=":
            T[i, s] = 1.0
            basis[i] = ident[i] = s
            s += 1
        elif r == ">=":
            T[i, s] = -1.0
            s += 1
            T[i, a] = 1.0
            basis[i] = ident[i] = a
            a += 1
        else:
            T[i, a] = 1.0
            basis[i] = ident[i] = a
            a += 1
    art = np.zeros(ncol, dtype=bool)
    art[nu + n_slack:] = True
    cost = np.zeros(ncol)
    cost[:nu] = std.c
    # row m: phase-2 reduced costs; row m+1: phase-1 reduced costs
    T[m, :ncol] = cost
    T[m + 1, :ncol] = art.astype(float)
    for i in range(m):
        if art[basis[i]]:
            T[m + 1] -= T[i]
    cap = max_iterations or 50 * (m + ncol) + 1000
    state = {"iters": 0, "degen": 0, "bland": False}
    scale = 1.0 + np.max(np.abs(T[:m])) if m else 1.0
    eps = tol * scale

    def pivot(r, e):
        T[r] /= T[r, e]
        col = T[:, e].copy()
        col[r] = 0.0
        T[:] -= np.outer(col, T[r])
        T[:, e] = 0.0
        T[r, e] = 1.0
        basis[r] = e

    def run(obj_row, allowed):
        while True:
            if state["iters"] >= cap:
                raise NumericalError("simplex iteration cap reached (cycling guard exhausted)",
                                     iterations=state["iters"])
            red = T[obj_row, :ncol]
            cand = np.flatnonzero((red < -eps) & allowed)
            if cand.size == 0:
                return OPTIMAL, None
            e = int(cand[0]) if state["bland"] else int(cand[np.argmin(red[cand])])
            col = T[:m, e]
            pos = np.flatnonzero(col > eps)
            if pos.size == 0:
                return UNBOUNDED, e
            ratios = T[pos, -1] / col[pos]
            best = np.min(ratios)
            ties = pos[ratios <= best + eps]
            r = int(ties[np.argmin(basis[ties])])
            if best <= eps:
                state["degen"] += 1
                if state["degen"] >= 3 * ncol:
                    state["bland"] = True
            else:
                state["degen"] = 0
            pivot(r, e)
            state["iters"] += 1

    allowed = np.ones(ncol, dtype=bool)
    if n_art:
        run(m + 1, allowed)
        if -T[m + 1, -1] > 1e-9 * (1.0 + np.max(np.abs(b), initial=0.0)):
            return LpSolution(INFEASIBLE, iterations=state["iters"], bland=state["bland"])
        for i in range(m):
            if art[basis[i]]:
                nz = np.flatnonzero(~art & (np.abs(T[i, :ncol]) > eps))
                if nz.size:
                    pivot(i, int(nz[0]))
        allowed = ~art
    status, e = run(m, allowed)
    if status == UNBOUNDED:
        ray_u = np.zeros(ncol)
        ray_u[e] = 1.0
        ray_u[basis] = -T[:m, e]
        ray = std.P @ ray_u[:nu]
        return LpSolution(UNBOUNDED, iterations=state["iters"], bland=state["bland"], ray=ray)

    # re-derive primal and dual values from the final basis
    full = np.zeros((m, ncol))
    full[:, :nu] = A
    s = nu
    aa = nu + n_slack
    for i, r in enumerate(rel):
        if r == "<=":
            full[i, s] = 1.0
            s += 1
        elif r == ">=":
            full[i, s] = -1.0
            s += 1
            full[i, aa] = 1.0
            aa += 1
        else:
            full[i, aa] = 1.0
            aa += 1
    cfull = np.zeros(ncol)
    cfull[:nu] = std.c
    u = np.zeros(ncol)
    u[basis] = T[:m, -1]
    Bm = full[:, basis]
    try:
        xb = np.linalg.solve(Bm, b)
        y = np.linalg.solve(Bm.T, cfull[basis])
        if np.all(xb >= -1e-9):
            u[:] = 0.0
            u[basis] = np.maximum(xb, 0.0)
        else:
            y = -T[m, ident] + cfull[ident]
    except np.linalg.LinAlgError:
        y = cfull[ident] - T[m, ident]
    x = std.shift + std.P @ u[:nu]
    y_std = y * flip
    objective = float(lp.c @ x)
    dual_obj = std.sign * float(std.b @ y_std) + std.const
    duals = std.sign * y_std[:std.m_user]
    return LpSolution(OPTIMAL, x=x, duals=duals, objective=objective, dual_objective=dual_obj,
                      iterations=state["iters"], bland=state["bland"])
