"""Spectral, semidefinite and quadratic bounds on weighted graph parameters."""

from .luz import LuzComparison, active_set, luz, projected_gradient, recession_direction, xi_vs_luz
from .membership import BODIES, corner_membership
from .search import best_hoffman_over_A, best_xi_over_A
from .spectral import hoffman, hoffman_via_sdp, perron_bound, perron_vector, ratio_bound_closed_form, xi
from .theta import theta, theta_plus, theta_prime

__all__ = [
    "BODIES",
    "LuzComparison",
    "active_set",
    "best_hoffman_over_A",
    "best_xi_over_A",
    "corner_membership",
    "hoffman",
    "hoffman_via_sdp",
    "luz",
    "perron_bound",
    "perron_vector",
    "projected_gradient",
    "ratio_bound_closed_form",
    "recession_direction",
    "theta",
    "theta_plus",
    "theta_prime",
    "xi",
    "xi_vs_luz",
]
