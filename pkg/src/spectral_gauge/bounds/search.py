"""Local searches over generalized adjacency matrices of a graph.

``min_A xi(A, w)`` equals theta of the graph and ``max_A hoffman(A, w)``
equals theta of its complement (nonnegative ``A``: theta_plus and
theta_prime).  The searches use those values only as a stopping reference;
attainment is reported, never assumed.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import NumericalError, SpectralGaugeError
from ..graph import GeneralizedAdjacency, Graph, as_weights, complement
from ..results import BoundResult
from .spectral import hoffman, xi
from .theta import theta

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
STOP_GAP = 1e-4


class _Budget:
    def __init__(self, g: Graph, fn, sense: float, limit: int):
        self.g, self.fn, self.sense, self.limit = g, fn, sense, limit
        self.used = 0
        self.best = None  # (score, weights)

    @property
    def left(self) -> int:
        return self.limit - self.used

    def __call__(self, weights) -> float:
        """Score to minimize (``sense * value``); inf once the budget is gone."""
        if self.used >= self.limit:
            return math.inf
        self.used += 1
        a = GeneralizedAdjacency.from_edge_weights(self.g, weights)
        try:
            score = self.sense * self.fn(a)
        except (NumericalError, SpectralGaugeError):
            return math.inf
        if self.best is None or score < self.best[0]:
            self.best = (score, np.array(weights, dtype=float))
        return score


def _golden(f, lo, hi, steps):
    """Golden-section search on ``[lo, hi]``; returns ``(x, f(x))`` of the best probe."""
    c = hi - GOLDEN * (hi - lo)
    d = lo + GOLDEN * (hi - lo)
    fc, fd = f(c), f(d)
    for _ in range(steps):
        if fc <= fd:
            hi, d, fd = d, c, fc
            c = hi - GOLDEN * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + GOLDEN * (hi - lo)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def _coordinate_descent(ev: _Budget, start, lo, hi, done, fx=None, steps: int = 4):
    x = np.array(start, dtype=float)
    fx = ev(x) if fx is None else fx
    radius = hi - lo  # the first sweep scans the whole box
    while ev.left > 0 and radius > 1e-3 and not done():
        improved = False
        for e in range(x.shape[0]):
            if ev.left <= 0 or done():
                break
            a, b = max(lo, x[e] - radius), min(hi, x[e] + radius)

            def line(t, e=e):
                z = x.copy()
                z[e] = t
                return ev(z)

            t, ft = _golden(line, a, b, steps)
            # optima often sit on the box boundary (an edge switched off)
            for edge_value in {a, b} & {lo, hi, 0.0}:
                fe = line(edge_value)
                if fe < ft:
                    t, ft = edge_value, fe
            if ft < fx - 1e-10 * (1.0 + abs(fx)):
                x[e], fx = t, ft
                improved = True
        if not improved:
            radius *= 0.5


def _edge_part(g: Graph, X, nonneg: bool):
    """Edge entries of ``X`` scaled into the search box."""
    weights = np.array([X[i, j] for i, j in g.sorted_edges()])
    if nonneg:
        weights = np.maximum(weights, 0.0)
    top = float(np.max(np.abs(weights), initial=0.0))
    return weights / top if top > 0 else None


def _theta_start(g: Graph, w, nonneg: bool, at_optimum: bool):
    """Edge weights read off a theta-type optimum of the complement.

    For the Hoffman search this is the primal ``X`` of theta of the
    complement at ``w``; for ``xi`` the same construction is applied at the
    maximizer ``x*`` of theta of ``g``, so that ``U_A`` is supported at
    ``x*``.  Only a starting point: nothing here is assumed optimal.
    """
    gb = complement(g)
    try:
        if at_optimum:
            w = np.maximum(theta(g, w, "theta_plus" if nonneg else "theta").certificate["x"], 0.0)
        X = theta(gb, w, "theta_prime" if nonneg else "theta").certificate["X"]
    except SpectralGaugeError:
        return None
    return _edge_part(g, X, nonneg)


def _search(g: Graph, w, fn, sense: float, nonneg: bool, budget: int, seed, reference, name,
            extra_start=None):
    w = as_weights(w, g.n)
    if g.m == 0:
        value = fn(GeneralizedAdjacency(g, np.zeros((g.n, g.n))))
        gap = 0.0 if reference is None else sense * (value - reference)
        return BoundResult(name, value, {"matrix": np.zeros((g.n, g.n))},
                           {"evaluations": 1, "budget": budget, "budget_exhausted": False,
                            "reference": reference, "gap": gap,
                            "attained": reference is None or gap <= STOP_GAP})
    ev = _Budget(g, fn, sense, budget)
    lo, hi = (0.0, 1.0) if nonneg else (-1.0, 1.0)

    def done():
        if reference is None or ev.best is None:
            return False
        return ev.best[0] - sense * reference <= STOP_GAP

    rng = np.random.default_rng(seed)
    start = np.ones(g.m)
    fx = ev(start)
    if extra_start is not None and not done():
        other = extra_start()
        if other is not None:
            fo = ev(other)
            if fo < fx:
                start, fx = other, fo
    starts = 0
    while ev.left > 0 and not done():
        _coordinate_descent(ev, start, lo, hi, done, fx)
        starts += 1
        start, fx = rng.uniform(lo, hi, size=g.m), None
    if ev.best is None or not math.isfinite(ev.best[0]):
        raise NumericalError("no candidate matrix could be evaluated")
    score, weights = ev.best
    value = sense * score
    gap = None if reference is None else sense * (value - reference)
    return BoundResult(name, value,
                       {"matrix": GeneralizedAdjacency.from_edge_weights(g, weights).matrix.copy()},
                       {"evaluations": ev.used, "budget": budget, "starts": starts,
                        "budget_exhausted": ev.left <= 0 and not done(),
                        "reference": reference, "gap": gap,
                        "attained": gap is not None and gap <= STOP_GAP})


def best_xi_over_A(g: Graph, w=None, nonneg: bool = False, budget: int = 200, seed=0,
                   reference: float | None = None, use_reference: bool = True) -> BoundResult:
    """Smallest ``xi(A, w)`` found over edge-supported ``A`` (``A >= 0`` if
    ``nonneg``), starting from the adjacency matrix and a theta-derived
    matrix.  The reference is theta
    (theta_plus for ``nonneg``) of ``g``."""
    w = as_weights(w, g.n)
    if reference is None and use_reference:
        reference = theta(g, w, "theta_plus" if nonneg else "theta").value
    extra = lambda: _theta_start(g, w, nonneg, True)
    return _search(g, w, lambda a: xi(a, w).value, 1.0, nonneg, budget, seed, reference,
                   "best_xi", extra)


def best_hoffman_over_A(g: Graph, w=None, nonneg: bool = False, budget: int = 200, seed=0,
                        reference: float | None = None, use_reference: bool = True) -> BoundResult:
    """Largest ``hoffman(A, w)`` found; the reference is theta (theta_prime
    for ``nonneg``) of the complement of ``g``."""
    w = as_weights(w, g.n)
    if reference is None and use_reference:
        reference = theta(complement(g), w, "theta_prime" if nonneg else "theta").value
    extra = lambda: _theta_start(g, w, nonneg, False)
    return _search(g, w, lambda a: hoffman(a, w, check=False).value, -1.0, nonneg, budget,
                   seed, reference, "best_hoffman", extra)
