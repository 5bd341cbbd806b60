"""Positive definite monotone gauges on the nonnegative orthant and their
polars, evaluated from value and subgradient oracles.

The polar of ``kappa`` is

    kappa_polar(z) = max { <w, z> : w >= 0, kappa(w) <= 1 },

computed here by Kelley's cutting-plane method.  Because a gauge is
positively homogeneous and convex, any subgradient ``g`` at any point gives
the globally valid cut ``<g, w> <= kappa(w)``, hence ``<g, w> <= 1`` on the
unit corner.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .bounds import hoffman, luz, theta, xi
from .errors import SpectralGaugeError
from .graph import Graph, as_weights
from .lp import LinearProgram, solve_lp
from .oracles import alpha, chi_f, maximal_cliques

Vector = np.ndarray


@dataclass
class GaugeOracle:
    """``value(w)`` and a subgradient ``supergradient(w) = g`` with
    ``<g, z> <= value(z)`` for all ``z >= 0`` and ``<g, w> = value(w)``.

    ``upper(w)``, if given, is a certified upper bound on the true value
    (used to scale points into the unit corner when ``value`` is inexact).
    """

    n: int
    value: Callable[[Vector], float]
    supergradient: Callable[[Vector], Vector] | None = None
    name: str = "gauge"
    upper: Callable[[Vector], float] | None = None

    def __call__(self, w) -> float:
        return float(self.value(np.asarray(w, dtype=float)))

    def bound(self, w) -> float:
        return float((self.upper or self.value)(np.asarray(w, dtype=float)))


@dataclass
class PolarEvaluation:
    z: Vector
    value: float
    maximizer: Vector
    cuts: int
    lower: float
    upper: float
    converged: bool
    history: list = field(default_factory=list, repr=False)


def _with_subgradient(k: GaugeOracle, w):
    if k.supergradient is None:
        raise ValueError(f"oracle {k.name!r} has no subgradient")
    g = np.asarray(k.supergradient(w), dtype=float)
    return np.maximum(g, 0.0)


def polar(k: GaugeOracle, z, tol: float = 1e-6, max_cuts: int = 500,
          feas_tol: float = 1e-6) -> PolarEvaluation:
    """Cutting-plane evaluation of ``kappa_polar(z)``.

    The master LP ``max <z, w>`` over the accumulated cuts and the box
    ``0 <= w_i <= 1 / kappa(e_i)`` gives ``upper``; each LP solution ``w_k``
    scaled by ``1 / kappa(w_k)`` is feasible and gives ``lower``.  Stops
    once ``upper - lower <= tol * (1 + lower)``.
    """
    z = as_weights(z, k.n)
    n = k.n
    if not np.any(z):
        return PolarEvaluation(z, 0.0, np.zeros(n), 0, 0.0, 0.0, True)
    eye = np.eye(n)
    corner = np.array([k.bound(eye[i]) for i in range(n)])
    if np.any(corner <= 0):
        raise ValueError("gauge is not positive definite on the unit vectors")
    box = 1.0 / corner
    cuts: list[Vector] = []
    lower, best = 0.0, np.zeros(n)
    # coordinate points are feasible after scaling
    for i in range(n):
        if z[i] * box[i] > lower:
            lower, best = z[i] * box[i], box[i] * eye[i]
    upper = float(z @ box)
    history = []
    converged = False
    for _ in range(max_cuts):
        if cuts:
            lp = LinearProgram(z, np.array(cuts), np.ones(len(cuts)), "<=", sense="max",
                               upper=box)
        else:
            lp = LinearProgram(z, np.zeros((0, n)), np.zeros(0), "<=", sense="max", upper=box)
        sol = solve_lp(lp)
        if not sol.optimal:
            raise SpectralGaugeError(f"master LP ended with status {sol.status}")
        w = np.maximum(sol.x, 0.0)
        upper = min(upper, float(sol.objective))
        kw = k.bound(w)
        if kw > 0:
            cand = float(z @ w) / kw
            if cand > lower:
                lower, best = cand, w / kw
        history.append((lower, upper))
        if upper - lower <= tol * (1.0 + lower):
            converged = True
            break
        g = _with_subgradient(k, w)
        if not np.any(g):
            break
        cuts.append(g)
    return PolarEvaluation(z, lower, best, len(cuts), lower, max(upper, lower), converged, history)


def polar_gauge(k: GaugeOracle, tol: float = 1e-6, max_cuts: int = 500) -> GaugeOracle:
    """``kappa_polar`` as an oracle: value is the certified lower end of the
    bracket, ``upper`` its upper end, and the subgradient the maximizer."""
    cache: dict = {}

    def evaluate(z):
        key = tuple(np.round(np.asarray(z, dtype=float), 15))
        if key not in cache:
            cache[key] = polar(k, z, tol, max_cuts)
        return cache[key]

    return GaugeOracle(k.n, lambda z: evaluate(z).lower, lambda z: evaluate(z).maximizer,
                       f"polar({k.name})", lambda z: evaluate(z).upper)


# ----------------------------------------------------------------------------
# reports


@dataclass
class AxiomReport:
    name: str
    trials: int
    violations: dict

    @property
    def max_violation(self) -> float:
        return max(self.violations.values(), default=0.0)

    def ok(self, eps: float = 1e-6) -> bool:
        return self.max_violation <= eps


def check_gauge_axioms(k: GaugeOracle, trials: int = 20, seed=0) -> AxiomReport:
    """Sample the gauge axioms and report the largest violation of each.

    ``definiteness`` is the violation of ``kappa(w) > 0`` for ``w != 0``
    measured as ``max(0, -kappa(w))``; ``zero`` is ``|kappa(0)|``.
    """
    rng = np.random.default_rng(seed)
    n = k.n
    viol = {"zero": abs(k(np.zeros(n))), "homogeneity": 0.0, "sublinearity": 0.0,
            "monotonicity": 0.0, "definiteness": 0.0}
    for _ in range(trials):
        w = rng.uniform(0.0, 1.0, n) * (rng.random(n) < 0.8)
        z = rng.uniform(0.0, 1.0, n)
        lam = float(rng.uniform(0.1, 3.0))
        kw, kz = k(w), k(z)
        viol["homogeneity"] = max(viol["homogeneity"], abs(k(lam * w) - lam * kw))
        viol["sublinearity"] = max(viol["sublinearity"], k(w + z) - kw - kz)
        viol["monotonicity"] = max(viol["monotonicity"], kw - k(w + 0.5 * z))
        if np.any(w):
            viol["definiteness"] = max(viol["definiteness"], -kw)
    return AxiomReport(k.name, trials, {key: max(v, 0.0) for key, v in viol.items()})


@dataclass
class RoundtripReport:
    points: list
    values: list
    bidual: list
    deviations: list

    @property
    def max_deviation(self) -> float:
        return max(self.deviations, default=0.0)


def polar_roundtrip(k: GaugeOracle, points: Sequence, tol: float = 1e-6,
                    max_cuts: int = 500) -> RoundtripReport:
    """Evaluate ``kappa_polar_polar`` by nesting ``polar`` (outer tolerance
    ten times the inner one) and compare with ``kappa``."""
    inner = polar_gauge(k, tol, max_cuts)
    vals, bid, dev = [], [], []
    for p in points:
        p = as_weights(p, k.n)
        v = k(p)
        r = polar(inner, p, 10.0 * tol, max_cuts)
        vals.append(v)
        bid.append(r.value)
        dev.append(abs(r.value - v) / max(abs(v), 1e-300))
    return RoundtripReport([np.asarray(p) for p in points], vals, bid, dev)


@dataclass
class ReversalReport:
    premise_holds: bool
    premise_violation: float
    holds: bool
    violation: float
    polars: list  # (kappa1_polar, kappa2_polar) per point


def reversal_check(k1: GaugeOracle, k2: GaugeOracle, points: Sequence, rays: int = 20,
                   tol: float = 1e-6, seed=0) -> ReversalReport:
    """If ``k1 <= k2`` pointwise, then ``k2_polar <= k1_polar``.

    The premise is checked on the points and on random rays first; when it
    fails the report says so and no polar is evaluated.
    """
    rng = np.random.default_rng(seed)
    sample = [as_weights(p, k1.n) for p in points]
    sample += [rng.uniform(0.0, 1.0, k1.n) for _ in range(rays)]
    pv = max((k1(w) - k2(w)) / (1.0 + abs(k2(w))) for w in sample)
    if pv > tol:
        return ReversalReport(False, pv, False, float("nan"), [])
    pol, worst = [], 0.0
    for p in points:
        a = polar(k1, p, tol)
        b = polar(k2, p, tol)
        pol.append((a.value, b.value))
        worst = max(worst, (b.lower - a.upper) / (1.0 + a.upper))
    return ReversalReport(True, max(pv, 0.0), worst <= 10.0 * tol, max(worst, 0.0), pol)


# ----------------------------------------------------------------------------
# oracles


def l1_gauge(n: int) -> GaugeOracle:
    return GaugeOracle(n, lambda w: float(np.sum(w)), lambda w: np.ones(n), "l1")


def linf_gauge(n: int) -> GaugeOracle:
    def sub(w):
        g = np.zeros(n)
        g[int(np.argmax(w))] = 1.0
        return g
    return GaugeOracle(n, lambda w: float(np.max(w)), sub, "linf")


def hoffman_gauge(a) -> GaugeOracle:
    n = np.asarray(getattr(a, "matrix", a)).shape[0]
    return GaugeOracle(n, lambda w: hoffman(a, w, check=False).value,
                       lambda w: hoffman(a, w, check=False).certificate["supergradient"],
                       "hoffman")


def xi_gauge(a) -> GaugeOracle:
    """``xi(A, .)``; the primal maximizer ``x`` is a subgradient, and the
    dual trace a certified upper value."""
    n = np.asarray(getattr(a, "matrix", a)).shape[0]
    cache: dict = {}

    def run(w):
        key = tuple(np.asarray(w, dtype=float))
        if key not in cache:
            cache[key] = xi(a, w)
        return cache[key]

    return GaugeOracle(n, lambda w: run(w).value, lambda w: run(w).certificate["x"], "xi",
                       lambda w: run(w).certificate["dual_value"])


def luz_gauge(a) -> GaugeOracle:
    """``luz(A, .)`` (finite for nonnegative ``A``).  The subgradient is the
    gradient ``x_i / sqrt(w_i)`` of the CQP value on the support."""
    n = np.asarray(getattr(a, "matrix", a)).shape[0]

    def sub(w):
        r = luz(a, w)
        x = r.certificate["x"]
        g = np.zeros(n)
        pos = w > 0
        g[pos] = x[pos] / np.sqrt(w[pos])
        return g

    return GaugeOracle(n, lambda w: float(luz(a, w)), sub, "luz")


def alpha_gauge(g: Graph) -> GaugeOracle:
    return GaugeOracle(g.n, lambda w: alpha(g, w).value,
                       lambda w: alpha(g, w).certificate["incidence"], "alpha")


def chi_f_gauge(g: Graph) -> GaugeOracle:
    return GaugeOracle(g.n, lambda w: chi_f(g, w).value,
                       lambda w: chi_f(g, w).certificate["dual"], "chi_f")


def theta_gauge(g: Graph, variant: str = "theta") -> GaugeOracle:
    cache: dict = {}

    def run(w):
        key = tuple(np.asarray(w, dtype=float))
        if key not in cache:
            cache[key] = theta(g, w, variant)
        return cache[key]

    return GaugeOracle(g.n, lambda w: run(w).value, lambda w: run(w).certificate["x"], variant,
                       lambda w: run(w).certificate["dual_value"])


# ----------------------------------------------------------------------------
# Minkowski functionals of polytopal corners


def minkowski_functional(A, b, x) -> float:
    """``min { t >= 0 : x in t C }`` for ``C = { y >= 0 : A y <= b }`` with
    ``b > 0``, as the LP ``min t  s.t.  A x <= t b``."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float)
    x = np.asarray(x, dtype=float)
    if np.any(b <= 0):
        raise ValueError("right-hand side must be positive")
    lp = LinearProgram([1.0], -b[:, None], -(A @ x), "<=", sense="min")
    sol = solve_lp(lp)
    if not sol.optimal:
        raise SpectralGaugeError(f"LP ended with status {sol.status}")
    return float(sol.objective)


def qstab_gauge(g: Graph) -> GaugeOracle:
    """Minkowski functional of QSTAB(g), by LP over the maximal cliques."""
    cl = maximal_cliques(g).incidence_matrix()
    ones = np.ones(cl.shape[0])

    def sub(w):
        gvec = np.zeros(g.n)
        return cl[int(np.argmax(cl @ w))] if cl.size else gvec

    return GaugeOracle(g.n, lambda w: minkowski_functional(cl, ones, w), sub, "qstab")
