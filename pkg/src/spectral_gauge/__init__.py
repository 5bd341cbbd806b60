"""Spectral and semidefinite bounds on weighted stability and fractional
chromatic numbers, with exact small-graph oracles and a gauge-polar engine."""

from .bounds import (best_hoffman_over_A, best_xi_over_A, hoffman, hoffman_via_sdp, luz,
                     perron_bound, ratio_bound_closed_form, theta, theta_plus, theta_prime, xi)
from .graph import (GeneralizedAdjacency, Graph, adjacency_matrix, complement, generate,
                    parse_graph, random_generalized_adjacency)
from .oracles import alpha, chi_f
from .results import BoundResult

__version__ = "0.1.0"

__all__ = [
    "BoundResult", "GeneralizedAdjacency", "Graph", "adjacency_matrix", "alpha",
    "best_hoffman_over_A", "best_xi_over_A", "chi_f", "complement", "generate", "hoffman",
    "hoffman_via_sdp", "luz", "parse_graph", "perron_bound", "random_generalized_adjacency",
    "ratio_bound_closed_form", "theta", "theta_plus", "theta_prime", "xi",
]
