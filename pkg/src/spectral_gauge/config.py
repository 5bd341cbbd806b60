"""Central numerical tolerances and size guards."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

DEFAULT_MAX_N = 64


def max_vertices() -> int:
    raw = os.environ.get("SPECTRAL_GAUGE_MAX_N")
    if raw is None:
        return DEFAULT_MAX_N
    value = int(raw)
    if value < 1:
        raise ValueError("SPECTRAL_GAUGE_MAX_N must be positive")
    return value


@dataclass(frozen=True)
class Tolerances:
    # dense linear algebra
    rank_tol: float = 1e-10
    tol_psd: float = 1e-8
    jacobi_offdiag: float = 1e-12
    jacobi_max_sweeps: int = 100
    # interior-point solvers
    gap_tol: float = 1e-7
    mu_start: float = 1.0
    mu_final: float = 1e-9
    mu_factor: float = 10.0
    newton_max_steps: int = 60
    max_stages: int = 15
    # LPs and membership tests
    lp_feas: float = 1e-9
    membership: float = 1e-8
    # near-zero generalized adjacency matrices are treated as zero
    tiny_lambda: float = 1e-12


TOL = Tolerances()


def tolerances(**overrides) -> Tolerances:
    """Return the defaults with selected fields replaced."""
    return replace(TOL, **overrides)
