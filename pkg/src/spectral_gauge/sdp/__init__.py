"""Interior-point solvers for the two SDP shapes used by the bounds."""

from .core import LmiProblem, LmiSolution, solve_lmi
from .diagonal import DiagonalLmiProblem, SdpSolution, repair_dual, solve_diagonal_lmi
from .dual import DualReport, check_dual_feasible
from .theta import (
    VARIANTS,
    BodyMembership,
    ThetaBodyProblem,
    ThetaSolution,
    max_trace_one,
    solve_theta_body,
    theta_body_membership,
)

__all__ = [
    "VARIANTS",
    "BodyMembership",
    "DiagonalLmiProblem",
    "DualReport",
    "LmiProblem",
    "LmiSolution",
    "SdpSolution",
    "ThetaBodyProblem",
    "ThetaSolution",
    "check_dual_feasible",
    "max_trace_one",
    "repair_dual",
    "solve_diagonal_lmi",
    "solve_lmi",
    "solve_theta_body",
    "theta_body_membership",
]
