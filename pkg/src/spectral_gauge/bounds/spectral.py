"""Eigenvalue and SDP bounds attached to a generalized adjacency matrix.

``hoffman`` lower-bounds the weighted fractional chromatic number and
``xi`` upper-bounds the weighted stability number; the two are gauge
polars of each other.
"""

from __future__ import annotations

import numpy as np

from ..config import TOL, Tolerances
from ..errors import NotApplicableError, NumericalError
from ..graph import GeneralizedAdjacency, Graph, adjacency_matrix, as_weights
from ..linalg import as_symmetric, eigen_sym, psd_sqrt, tilde
from ..results import BoundResult
from ..sdp import DiagonalLmiProblem, check_dual_feasible, max_trace_one, solve_diagonal_lmi


def _matrix(a) -> np.ndarray:
    return as_symmetric(a.matrix if isinstance(a, GeneralizedAdjacency) else a)


def _gram(a):
    """``I + A~`` together with the normalization record."""
    t = tilde(_matrix(a))
    n = t.matrix.shape[0]
    return np.eye(n) + t.matrix, t


def hoffman(a, w=None, check: bool = True) -> BoundResult:
    """``lambda_max(W^{1/2} (I + A~) W^{1/2})``.

    The certificate holds the top eigenvector and a subgradient ``g`` with
    ``<g, w> = value`` and ``<g, z> <= H(A, z)`` for every ``z >= 0``.
    """
    C, t = _gram(a)
    n = C.shape[0]
    w = as_weights(w, n)
    s = np.sqrt(w)
    d = eigen_sym(s[:, None] * C * s[None, :])
    value = max(d.lambda_max, 0.0)
    B = psd_sqrt(C)
    ds = eigen_sym((B * w) @ B)
    # the swapped product has the same nonzero spectrum
    swapped = ds.lambda_max
    if check and abs(swapped - value) > 1e-8 * (1.0 + abs(value)):
        raise NumericalError("eigenvalue forms disagree", value=value, swapped=swapped)
    u = ds.eigenvectors[:, -1]
    g = (B @ u) ** 2
    return BoundResult("hoffman", value,
                       {"eigenvector": d.eigenvectors[:, -1].copy(), "supergradient": g},
                       {"swapped": swapped, "lambda_min": t.lambda_min,
                        "treated_as_zero": t.treated_as_zero, "sweeps": d.sweeps})


def hoffman_via_sdp(a, w=None, tol: Tolerances = TOL) -> BoundResult:
    """Same bound as ``hoffman`` from ``max <B W B, X>, tr X = 1, X >= 0``."""
    C, t = _gram(a)
    w = as_weights(w, C.shape[0])
    B = psd_sqrt(C)
    sol = max_trace_one((B * w) @ B, tol)
    ref = hoffman(a, w, check=False).value
    return BoundResult("hoffman_sdp", sol.value, {"X": sol.X},
                       {"gap": sol.gap, "iterations": sol.iterations, "eigen_value": ref,
                        "deviation": abs(sol.value - ref), "treated_as_zero": t.treated_as_zero})


def xi(a, w=None, tol: Tolerances = TOL) -> BoundResult:
    """``max <w, x>  s.t.  B Diag(x) B <= I, x >= 0`` with ``B = (I + A~)^{1/2}``.

    ``value`` is the primal optimum; ``certificate["dual_value"]`` is the
    trace of an exactly feasible dual ``Y`` and so a rigorous upper bound.
    """
    C, t = _gram(a)
    w = as_weights(w, C.shape[0])
    B = psd_sqrt(C)
    sol = solve_diagonal_lmi(DiagonalLmiProblem(B, w), tol)
    return BoundResult("xi", sol.primal,
                       {"x": sol.x, "Y": sol.Y, "dual_value": sol.dual},
                       {"gap": sol.gap, "iterations": sol.iterations, "stages": sol.stages,
                        "dual_margin": sol.dual_margin, "slack_min": sol.slack_min,
                        "treated_as_zero": t.treated_as_zero})


def ratio_bound_closed_form(a, check: bool = True, tol: Tolerances = TOL) -> float:
    """``n / (1 - lambda/tau)`` when the all-ones vector is a top eigenvector.

    With ``check`` the value is compared against the SDP ``xi(a, 1)``.
    """
    m = _matrix(a)
    n = m.shape[0]
    if not np.any(m):
        raise NotApplicableError("the matrix is zero")
    d = eigen_sym(m)
    lam, tau = d.lambda_max, d.lambda_min
    if np.max(np.abs(m.sum(axis=1) - lam)) > 1e-8 * (1.0 + abs(lam)):
        raise NotApplicableError("the all-ones vector is not a top eigenvector")
    value = n / (1.0 - lam / tau)
    if check:
        sdp = xi(m, np.ones(n), tol).value
        if abs(sdp - value) > 1e-5:
            raise NumericalError("closed form disagrees with the SDP", closed=value, sdp=sdp)
    return float(value)


def perron_vector(g: Graph):
    """``(lambda_max, lambda_min, p)`` with ``p`` the unit Perron vector of
    ``A_G``, sign fixed nonnegative."""
    d = eigen_sym(adjacency_matrix(g, raw=True))
    p = d.eigenvectors[:, -1].copy()
    if p[int(np.argmax(np.abs(p)))] < 0:
        p = -p
    if np.any(p < -1e-8):
        raise NotApplicableError("top eigenvector has mixed signs")
    p[(p < 0) & (p >= -1e-10)] = 0.0
    p = np.maximum(p, 0.0)
    return d.lambda_max, d.lambda_min, p


def perron_bound(g: Graph) -> BoundResult:
    """``max_i p_i^{-2} / (1 - lambda/tau)`` for a connected graph ``g``.

    ``eta p p^T`` is dual feasible for ``xi(A_G, 1)``; its residuals are
    reported in the diagnostics.
    """
    if g.m == 0 or not g.is_connected():
        raise NotApplicableError("the Perron bound needs a connected graph with an edge")
    lam, tau, p = perron_vector(g)
    if np.min(p) <= 0.0:
        raise NotApplicableError("Perron vector has a zero entry")
    value = float(np.max(p ** -2.0) / (1.0 - lam / tau))
    Y = value * np.outer(p, p)
    rep = check_dual_feasible(Y, np.ones(g.n), a=adjacency_matrix(g, raw=True))
    return BoundResult("perron", value, {"perron_vector": p, "Y": Y},
                       {"lambda_max": lam, "lambda_min": tau, "dual_margin": rep.margin})
