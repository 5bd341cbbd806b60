"""Lovasz theta and its two variants as bound results."""

from __future__ import annotations

from ..config import TOL, Tolerances
from ..graph import Graph, as_weights
from ..results import BoundResult
from ..sdp import VARIANTS, ThetaBodyProblem, solve_theta_body


def theta(g: Graph, w=None, variant: str = "theta", tol: Tolerances = TOL) -> BoundResult:
    """``max <w, x>`` over the theta body of ``g`` (or its variant).

    ``value`` is attained by ``x``; ``certificate["dual_value"]`` comes from a
    strictly feasible dual matrix and bounds the optimum from above.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    sol = solve_theta_body(ThetaBodyProblem(g, as_weights(w, g.n), variant), tol)
    return BoundResult(variant, sol.value,
                       {"x": sol.x, "X": sol.X, "S": sol.S, "dual_value": sol.dual},
                       {"gap": sol.gap, "iterations": sol.iterations, "stages": sol.stages,
                        "bordered_min": sol.bordered_min})


def theta_prime(g: Graph, w=None, tol: Tolerances = TOL) -> BoundResult:
    return theta(g, w, "theta_prime", tol)


def theta_plus(g: Graph, w=None, tol: Tolerances = TOL) -> BoundResult:
    return theta(g, w, "theta_plus", tol)
