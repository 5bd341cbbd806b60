"""Theta-body optimization and membership, plus the trace-constrained SDP
form of the Hoffman bound, all on the generic LMI barrier core.

The theta body of ``G`` is the set of ``x`` admitting ``X`` with
``diag(X) = x``, ``[[1, x^T], [x, X]] >= 0`` and ``X_ij = 0`` on edges.
Variant ``theta_prime`` adds ``X_ij >= 0`` everywhere; ``theta_plus``
relaxes the edge condition to ``X_ij <= 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ..config import TOL, Tolerances
from ..graph import Graph, as_weights
from ..kernels import SparseBasis
from ..linalg import lambda_min
from .core import LmiProblem, solve_lmi

VARIANTS = ("theta", "theta_prime", "theta_plus")


@dataclass(frozen=True)
class ThetaBodyProblem:
    graph: Graph
    w: np.ndarray
    variant: str = "theta"

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")
        object.__setattr__(self, "w", as_weights(self.w, self.graph.n))


@dataclass
class ThetaSolution:
    value: float
    x: np.ndarray
    X: np.ndarray
    dual: float
    gap: float
    dual_residual: float
    iterations: int
    stages: int
    bordered_min: float
    S: np.ndarray | None = None
    status: str = "optimal"


def _pairs(g: Graph, variant: str):
    """Off-diagonal entries of ``X`` kept as variables, with their sign."""
    pairs = [(i, j, 1.0 if variant == "theta_prime" else 0.0) for i, j in g.non_edges()]
    if variant == "theta_plus":
        pairs += [(i, j, -1.0) for i, j in g.sorted_edges()]
    return pairs


def _bordered(x, X):
    n = x.shape[0]
    z = np.empty((n + 1, n + 1))
    z[0, 0] = 1.0
    z[0, 1:] = z[1:, 0] = x
    z[1:, 1:] = X
    return z


def theta_body_lmi(g: Graph, w, variant: str):
    n = g.n
    pairs = _pairs(g, variant)
    entries = [[(0, i + 1, 1.0), (i + 1, i + 1, 1.0)] for i in range(n)]
    entries += [[(i + 1, j + 1, 1.0)] for i, j, _ in pairs]
    basis = SparseBasis.from_entries(n + 1, entries)
    f0 = np.zeros((n + 1, n + 1))
    f0[0, 0] = 1.0
    c = np.concatenate([w, np.zeros(len(pairs))])
    signs = np.concatenate([np.zeros(n), [s for _, _, s in pairs]])
    t = 1.0 / (n + 1)
    s = t / (2.0 * n * (n + 1))
    v0 = np.concatenate([np.full(n, t), [sg * s for _, _, sg in pairs]])
    return LmiProblem(f0, basis, c, signs), v0, pairs


def theta_dual_lmi(g: Graph, w, variant: str):
    """Dual of the theta-body program as an LMI in the free entries of ``S``.

    ``S`` has order ``n + 1`` with ``S_ii = -w_i - 2 S_0i``; an entry
    ``S_ij`` is zero where ``X_ij`` is a free primal variable, unrestricted
    where ``X_ij`` is fixed at zero, and sign-constrained opposite to a
    signed ``X_ij``.  The value is ``min S_00``, posed as ``max -S_00``.
    """
    n = g.n
    entries = [[(0, 0, 1.0)]]
    entries += [[(0, i + 1, 1.0), (i + 1, i + 1, -2.0)] for i in range(n)]
    signs = [0.0] * (n + 1)
    off = []
    if variant in ("theta", "theta_prime"):
        off += [(i, j, 0.0) for i, j in g.sorted_edges()]
    if variant == "theta_prime":
        off += [(i, j, -1.0) for i, j in g.non_edges()]
    if variant == "theta_plus":
        off += [(i, j, 1.0) for i, j in g.sorted_edges()]
    entries += [[(i + 1, j + 1, 1.0)] for i, j, _ in off]
    signs += [s for _, _, s in off]
    basis = SparseBasis.from_entries(n + 1, entries)
    f0 = np.zeros((n + 1, n + 1))
    f0[1:, 1:] = -np.diag(w)
    c = np.zeros(basis.size)
    c[0] = -1.0
    s0 = -(np.asarray(w) + 1.0) / 2.0
    eps = 1.0 / (4.0 * max(n, 1))
    v0 = np.concatenate([[1.0 + 2.0 * float(s0 @ s0)], s0, [sg * eps for _, _, sg in off]])
    return LmiProblem(f0, basis, c, np.array(signs)), v0


def _solve_from(lmi, v0, tol, bump):
    for _ in range(40):
        try:
            return solve_lmi(lmi, v0, tol)
        except ValueError:
            v0 = bump(v0)
    raise RuntimeError("could not find an interior starting point")  # pragma: no cover


def _unpack(n, v, pairs):
    x = v[:n].copy()
    X = np.diag(x)
    for k, (i, j, _) in enumerate(pairs):
        X[i, j] = X[j, i] = v[n + k]
    return x, X


def solve_theta_body(p: ThetaBodyProblem, tol: Tolerances = TOL) -> ThetaSolution:
    """Maximize ``<w, x>`` over the chosen theta body."""
    g, n = p.graph, p.graph.n
    scale = float(np.max(p.w, initial=0.0))
    if scale == 0.0:
        z = np.zeros(n)
        return ThetaSolution(0.0, z, np.zeros((n, n)), 0.0, 0.0, 0.0, 0, 0, 0.0)
    w = p.w / scale
    lmi, v0, pairs = theta_body_lmi(g, w, p.variant)
    sol = _solve_from(lmi, v0, tol, lambda v: 0.5 * v)
    x, X = _unpack(n, sol.v, pairs)
    # the dual is solved separately so its certificate is strictly feasible
    dlmi, d0 = theta_dual_lmi(g, w, p.variant)

    def grow(v):
        v = v.copy()
        v[0] = 2.0 * v[0] + 1.0
        return v

    dsol = _solve_from(dlmi, d0, tol, grow)
    S = dsol.z
    dual = float(dsol.v[0])
    return ThetaSolution(value=scale * sol.primal, x=x, X=X, dual=scale * dual,
                         gap=scale * (dual - sol.primal), dual_residual=0.0,
                         iterations=sol.iterations + dsol.iterations, stages=sol.stages,
                         bordered_min=lambda_min(_bordered(x, X)), S=scale * S,
                         status="stalled" if "stalled" in (sol.status, dsol.status) else "optimal")


class BodyMembership(NamedTuple):
    inside: bool
    margin: float
    X: np.ndarray | None


def theta_body_membership(g: Graph, x, variant: str = "theta", tol: float = 1e-8,
                          tolerances: Tolerances = TOL) -> BodyMembership:
    """Decide whether ``x`` lies in the chosen theta body.

    Solves ``max t`` such that the bordered matrix minus ``t I`` is PSD (and
    every sign-constrained entry is at least ``t``) over the free entries of
    ``X``; ``x`` is inside iff the optimum is at least ``-tol``.  The run
    stops early once the sign of the optimum is settled.
    """
    n = g.n
    x = np.asarray(x, dtype=float)
    if x.shape != (n,):
        raise ValueError(f"point must have length {n}")
    if np.any(x < -tol) or np.any(x > 1.0 + tol):
        return BodyMembership(False, float(min(np.min(x), 1.0 - np.max(x))), None)
    pairs = _pairs(g, variant)
    signed = [k for k, (_, _, s) in enumerate(pairs) if s != 0.0]
    order = n + 1 + len(signed)
    f0 = np.zeros((order, order))
    f0[: n + 1, : n + 1] = _bordered(x, np.diag(x))
    entries = []
    for k, (i, j, s) in enumerate(pairs):
        ent = [(i + 1, j + 1, 1.0)]
        if s != 0.0:
            r = n + 1 + signed.index(k)
            ent.append((r, r, s))
        entries.append(ent)
    entries.append([(r, r, -1.0) for r in range(order)])
    basis = SparseBasis.from_entries(order, entries)
    lmi = LmiProblem(f0, basis, np.eye(len(pairs) + 1)[-1], np.zeros(len(pairs) + 1))
    v0 = np.zeros(len(pairs) + 1)
    v0[-1] = lambda_min(f0) - 1.0
    nu = order

    def settled(v, mu):
        return v[-1] > 0.0 or v[-1] + mu * nu < -tol

    sol = solve_lmi(lmi, v0, tolerances, stop=settled)
    t = float(sol.v[-1])
    inside = t >= -tol
    _, X = _unpack(n, np.concatenate([x, sol.v[:-1]]), pairs)
    return BodyMembership(bool(inside), t, X)


@dataclass
class TraceSdpSolution:
    value: float
    X: np.ndarray
    dual: float
    gap: float
    iterations: int


def max_trace_one(C, tol: Tolerances = TOL) -> TraceSdpSolution:
    """``max <C, X>  s.t.  tr X = 1, X >= 0`` (whose value is ``lambda_max(C)``).

    ``X = I/n + sum_k v_k E_k`` with ``E_k`` spanning the trace-zero
    symmetric matrices, so only the PSD constraint remains.
    """
    C = np.asarray(C, dtype=float)
    n = C.shape[0]
    if n == 1:
        return TraceSdpSolution(float(C[0, 0]), np.ones((1, 1)), float(C[0, 0]), 0.0, 0)
    scale = float(np.max(np.abs(C)))
    if scale == 0.0:
        return TraceSdpSolution(0.0, np.eye(n) / n, 0.0, 0.0, 0)
    Cs = C / scale
    entries = [[(i, i, 1.0), (n - 1, n - 1, -1.0)] for i in range(n - 1)]
    entries += [[(i, j, 1.0)] for i in range(n) for j in range(i + 1, n)]
    basis = SparseBasis.from_entries(n, entries)
    c = basis.inner(Cs)
    sol = solve_lmi(LmiProblem(np.eye(n) / n, basis, c, np.zeros(basis.size)),
                    np.zeros(basis.size), tol)
    offset = np.trace(Cs) / n
    X = sol.z
    return TraceSdpSolution(scale * (sol.primal + offset), X, scale * (sol.dual + offset),
                            scale * sol.gap, sol.iterations)
