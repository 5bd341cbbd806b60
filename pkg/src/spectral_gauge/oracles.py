"""Exact brute-force parameters on small graphs: stable sets, alpha, chi_f,
and membership in the stable set and clique-constrained polytopes."""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import CapacityError, NumericalError
from .graph import Graph, as_weights, complement
from .kernels import stable_masks
from .kernels.stable import max_weight_stable
from .lp import LinearProgram, solve_lp
from .results import BoundResult

__all__ = [
    "ENUMERATION_LIMIT",
    "LP_LIMIT",
    "StableSetFamily",
    "Membership",
    "enumerate_stable_sets",
    "maximal_cliques",
    "mask_to_set",
    "incidence",
    "alpha",
    "chi_f",
    "in_stab",
    "in_qstab",
]

ENUMERATION_LIMIT = 30
LP_LIMIT = 20


def mask_to_set(mask: int) -> tuple[int, ...]:
    out, v = [], 0
    mask = int(mask)
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def incidence(mask: int, n: int) -> np.ndarray:
    x = np.zeros(n)
    x[list(mask_to_set(mask))] = 1.0
    return x


@dataclass(frozen=True, eq=False)
class StableSetFamily:
    graph: Graph
    masks: np.ndarray
    maximal_only: bool

    def __len__(self) -> int:
        return int(self.masks.shape[0])

    def sets(self) -> list[tuple[int, ...]]:
        return [mask_to_set(s) for s in self.masks]

    def incidence_matrix(self) -> np.ndarray:
        """Rows are incidence vectors, in the family's order."""
        n = self.graph.n
        bits = (self.masks[:, None] >> np.arange(n)[None, :]) & 1
        return bits.astype(float)


def _guard(g: Graph, limit: int, what: str) -> None:
    if g.n > limit:
        raise CapacityError(f"{what} is limited to n <= {limit}, got n = {g.n}")


@functools.lru_cache(maxsize=256)
def _cached_masks(g: Graph, maximal_only: bool) -> np.ndarray:
    masks = stable_masks(np.array(g.neighbor_masks(), dtype=np.int64), maximal_only)
    masks = np.array(masks, dtype=np.int64)
    masks.setflags(write=False)
    return masks


def enumerate_stable_sets(g: Graph, maximal_only: bool = False) -> StableSetFamily:
    """Every (maximal) stable set of ``g``, ordered by increasing bitmask."""
    _guard(g, ENUMERATION_LIMIT, "stable-set enumeration")
    return StableSetFamily(g, _cached_masks(g, bool(maximal_only)), bool(maximal_only))


def maximal_cliques(g: Graph) -> StableSetFamily:
    return enumerate_stable_sets(complement(g), maximal_only=True)


def alpha(g: Graph, w=None) -> BoundResult:
    """Maximum weight of a stable set, by branch and bound over bitsets."""
    _guard(g, ENUMERATION_LIMIT, "alpha")
    w = as_weights(w, g.n)
    value, mask, nodes = max_weight_stable(np.array(g.neighbor_masks(), dtype=np.int64), w)
    s = mask_to_set(mask)
    # correctly rounded sum, so the value does not depend on vertex order
    value = math.fsum(w[list(s)])
    return BoundResult("alpha", value, {"stable_set": list(s), "incidence": incidence(mask, g.n)},
                       {"nodes": nodes})


def _cover_lp(g: Graph, w: np.ndarray):
    fam = enumerate_stable_sets(g, maximal_only=True)
    M = fam.incidence_matrix()
    lp = LinearProgram(np.ones(len(fam)), M.T, w, ">=", sense="min")
    sol = solve_lp(lp)
    if not sol.optimal:
        raise NumericalError(f"covering LP ended with status {sol.status}")
    return fam, sol


def chi_f(g: Graph, w=None) -> BoundResult:
    """Weighted fractional chromatic number as a covering LP over maximal
    stable sets.  The certificate holds the cover ``y`` and the LP dual
    ``x``, a point of QSTAB of the complement with ``<w, x> = chi_f``."""
    _guard(g, LP_LIMIT, "chi_f")
    w = as_weights(w, g.n)
    if not np.any(w):
        return BoundResult("chi_f", 0.0, {"cover": {}, "dual": np.zeros(g.n)}, {"gap": 0.0})
    fam, sol = _cover_lp(g, w)
    y = np.maximum(sol.x, 0.0)
    cover = {s: float(v) for s, v in zip(fam.sets(), y) if v > 1e-12}
    dual = np.maximum(sol.duals, 0.0)
    return BoundResult("chi_f", sol.objective, {"cover": cover, "dual": dual},
                       {"gap": abs(sol.objective - sol.dual_objective), "iterations": sol.iterations})


class Membership(NamedTuple):
    inside: bool
    value: float
    certificate: np.ndarray | None


def in_stab(g: Graph, x, tol: float = 1e-8) -> Membership:
    """``x`` lies in STAB(g) iff ``x >= 0`` and ``chi_f(g, x) <= 1``.

    ``value`` is ``chi_f(g, x)``.  When ``x`` is outside, ``certificate`` is
    ``y`` in QSTAB of the complement with ``<y, x> > 1``, which separates
    ``x`` from STAB(g).
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (g.n,):
        raise ValueError(f"point must have length {g.n}")
    if np.any(x < -tol):
        v = np.zeros(g.n)
        v[int(np.argmin(x))] = -1.0
        return Membership(False, float("inf"), v)
    r = chi_f(g, np.maximum(x, 0.0))
    inside = r.value <= 1.0 + tol
    return Membership(bool(inside), r.value, None if inside else r.certificate["dual"])


def in_qstab(g: Graph, x, tol: float = 1e-8) -> Membership:
    """``x >= 0`` with at most unit weight on every maximal clique.

    ``value`` is the largest clique weight; a violated clique's incidence
    vector is the certificate.
    """
    _guard(g, LP_LIMIT, "in_qstab")
    x = np.asarray(x, dtype=float)
    if x.shape != (g.n,):
        raise ValueError(f"point must have length {g.n}")
    if np.any(x < -tol):
        return Membership(False, float("inf"), None)
    cl = maximal_cliques(g).incidence_matrix()
    loads = cl @ x
    k = int(np.argmax(loads))
    inside = loads[k] <= 1.0 + tol
    return Membership(bool(inside), float(loads[k]), None if inside else cl[k])
