"""Membership tests for the convex corners the bounds are built from."""

from __future__ import annotations

import numpy as np

from ..graph import Graph
from ..oracles import in_qstab, in_stab
from ..sdp import theta_body_membership
from .spectral import hoffman, xi

BODIES = ("U_A", "H_A", "TH", "TH'", "TH+", "STAB", "QSTAB")
_VARIANT = {"TH": "theta", "TH'": "theta_prime", "TH+": "theta_plus"}


def corner_membership(body: str, point, graph: Graph | None = None, a=None,
                      tol: float | None = None) -> bool:
    """Is ``point`` in the named corner of ``graph`` (or of the matrix ``a``)?

    ``U_A`` is ``{x >= 0 : hoffman(A, x) <= 1}`` and ``H_A`` is
    ``{x >= 0 : xi(A, x) <= 1}``; the theta bodies are decided by a
    feasibility SDP, STAB and QSTAB by their LP descriptions.
    """
    if body not in BODIES:
        raise ValueError(f"body must be one of {BODIES}")
    x = np.asarray(point, dtype=float)
    if body in ("U_A", "H_A"):
        if a is None:
            raise ValueError(f"{body} needs the matrix A")
        if np.any(x < 0):
            return False
        if body == "U_A":
            return hoffman(a, x, check=False).value <= 1.0 + (1e-8 if tol is None else tol)
        return xi(a, x).value <= 1.0 + (1e-6 if tol is None else tol)
    if graph is None:
        raise ValueError(f"{body} needs the graph")
    if body in _VARIANT:
        return theta_body_membership(graph, x, _VARIANT[body], 1e-8 if tol is None else tol).inside
    test = in_stab if body == "STAB" else in_qstab
    return test(graph, x, 1e-8 if tol is None else tol).inside
