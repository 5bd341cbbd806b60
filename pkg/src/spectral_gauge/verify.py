"""Named numerical checks of the duality relations between the bounds.

Each suite returns a list of ``Check`` records sorted by name;
instances of one check on several matrices / weights are merged and the
worst measured quantity is kept.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bounds import (best_hoffman_over_A, best_xi_over_A, corner_membership, hoffman,
                     hoffman_via_sdp, luz, perron_bound, theta, xi, xi_vs_luz)
from .gauge import (alpha_gauge, chi_f_gauge, check_gauge_axioms, hoffman_gauge, l1_gauge,
                    luz_gauge, polar, polar_roundtrip, qstab_gauge, reversal_check, theta_gauge,
                    xi_gauge)
from .graph import (GeneralizedAdjacency, Graph, adjacency_matrix, complement,
                    is_vertex_transitive, random_generalized_adjacency)
from .linalg import eigen_sym, tilde
from .oracles import LP_LIMIT, alpha, chi_f

SUITES = ("gauge", "duality", "sandwich", "luz", "theta")


@dataclass
class Check:
    name: str
    passed: bool
    worst: float  # largest violation (<= 0 means satisfied with room)
    count: int = 1
    note: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "worst": self.worst,
                "count": self.count, "note": self.note}


class _Collector:
    def __init__(self):
        self.checks: dict[str, Check] = {}

    def add(self, name, violation, slack=0.0, note=""):
        """Record ``violation <= slack`` under ``name``."""
        violation = float(violation)
        ok = bool(violation <= slack)
        c = self.checks.get(name)
        if c is None:
            self.checks[name] = Check(name, ok, violation, 1, note)
        else:
            c.passed = c.passed and ok
            c.worst = max(c.worst, violation)
            c.count += 1

    def flag(self, name, ok, measured=0.0, note=""):
        """Record a pass/fail outcome that is not a single inequality."""
        c = self.checks.get(name)
        if c is None:
            self.checks[name] = Check(name, bool(ok), float(measured), 1, note)
        else:
            c.passed = c.passed and bool(ok)
            c.worst = max(c.worst, float(measured))
            c.count += 1

    def result(self) -> list[Check]:
        return [self.checks[k] for k in sorted(self.checks)]


def _matrices(g: Graph, seed, count: int = 5):
    out = [("adjacency", adjacency_matrix(g))] if g.m else [("zero", adjacency_matrix(g))]
    if g.m:
        for k in range(count):
            out.append((f"random:{seed + k}", random_generalized_adjacency(g, k % 2 == 1, seed + k)))
    return out


def _weights(n: int, rng, count: int = 1):
    return [np.ones(n)] + [rng.uniform(0.0, 1.0, n) for _ in range(count)]


# ----------------------------------------------------------------------------


def suite_sandwich(g: Graph, seed: int = 0, eps: float = 1e-6, samples: int = 5):
    rng = np.random.default_rng(seed)
    col = _Collector()
    for w in _weights(g.n, rng, 2):
        a_val = alpha(g, w).value
        c_val = chi_f(g, w).value if g.n <= LP_LIMIT else None
        for _, a in _matrices(g, seed, samples):
            h = hoffman(a, w).value
            col.add("hoffman-at-least-max-weight", np.max(w) - h, eps)
            if c_val is not None:
                col.add("hoffman-at-most-chi-f", h - c_val, eps)
            x = xi(a, w).value
            col.add("xi-at-least-alpha", a_val - x, eps)
            col.add("xi-at-most-total-weight", x - np.sum(w), eps)
    if g.m and g.is_connected():
        col.add("perron-bound-at-least-alpha", alpha(g).value - perron_bound(g).value, eps)
    return col.result()


def suite_duality(g: Graph, seed: int = 0, eps: float = 1e-6, polar_tol: float = 1e-6):
    rng = np.random.default_rng(seed)
    col = _Collector()
    mats = _matrices(g, seed, 2)
    for w in _weights(g.n, rng, 1):
        for _, a in mats:
            x = xi(a, w).value
            p = polar(hoffman_gauge(a), w, polar_tol)
            col.add("xi-equals-hoffman-polar", abs(p.value - x) - 1e-4 * (1.0 + x))
            col.add("hoffman-eigen-equals-sdp",
                    abs(hoffman_via_sdp(a, w).value - hoffman(a, w).value), 1e-6)
        if g.n <= LP_LIMIT:
            c = chi_f(g, w).value
            pa = polar(alpha_gauge(g), w, 1e-8)
            col.add("alpha-polar-equals-chi-f", abs(pa.value - c) - 1e-4 * (1.0 + c))
            pc = polar(chi_f_gauge(g), w, 1e-8)
            av = alpha(g, w).value
            col.add("chi-f-polar-equals-alpha", abs(pc.value - av) - 1e-4 * (1.0 + av))
    for _, a in mats:
        for _ in range(3):
            w, z = rng.uniform(0.0, 1.0, g.n), rng.uniform(0.0, 1.0, g.n)
            col.add("hoffman-xi-cauchy-inequality",
                    float(w @ z) - hoffman(a, w).value * xi(a, z).value, eps)
    if g.m:
        d = eigen_sym(adjacency_matrix(g, raw=True))
        h = hoffman(adjacency_matrix(g)).value
        col.add("hoffman-adjacency-closed-form",
                abs(h - (1.0 - d.lambda_max / d.lambda_min)), 1e-8)
        deg = g.degrees()
        if np.all(deg == deg[0]):
            k, tau = float(deg[0]), d.lambda_min
            col.add("ratio-bound-recovered",
                    abs(xi(adjacency_matrix(g)).value - g.n / (1.0 - k / tau)), 1e-5)
    return col.result()


def _midpoint_concavity(a, rng, trials=5):
    """``f(w) = <sqrt w, Z sqrt w>`` with ``Z = Diag(x)(I + A~)Diag(x)``."""
    n = a.n
    C = np.eye(n) + tilde(a).matrix
    worst = -np.inf
    for _ in range(trials):
        x = rng.uniform(0.0, 1.0, n)
        Z = x[:, None] * C * x[None, :]
        f = lambda v: float(np.sqrt(v) @ Z @ np.sqrt(v))
        w, z = rng.uniform(0.0, 1.0, n), rng.uniform(0.0, 1.0, n)
        worst = max(worst, 0.5 * (f(w) + f(z)) - f(0.5 * (w + z)))
    return worst


def suite_gauge(g: Graph, seed: int = 0, eps: float = 1e-6, trials: int = 8,
                roundtrip: bool = True):
    rng = np.random.default_rng(seed)
    col = _Collector()
    a = adjacency_matrix(g)
    nonneg = random_generalized_adjacency(g, True, seed) if g.m else a
    signed = random_generalized_adjacency(g, False, seed) if g.m else a
    col.add("gauge-axioms-hoffman", check_gauge_axioms(hoffman_gauge(signed), trials, seed).max_violation, eps)
    col.add("gauge-axioms-xi", check_gauge_axioms(xi_gauge(signed), trials, seed).max_violation, eps)
    col.add("gauge-axioms-theta", check_gauge_axioms(theta_gauge(g), trials, seed).max_violation, eps)
    col.add("gauge-axioms-luz-nonnegative",
            check_gauge_axioms(luz_gauge(nonneg), trials, seed).max_violation, 1e-5)
    z = rng.uniform(0.0, 2.0, g.n)
    p = polar(l1_gauge(g.n), z)
    col.add("l1-polar-is-max-norm", abs(p.value - np.max(z)), 1e-9)
    if roundtrip and g.n <= 7:
        pts = [rng.uniform(0.1, 1.0, g.n) for _ in range(2)]
        col.add("hoffman-polar-roundtrip",
                polar_roundtrip(hoffman_gauge(signed), pts, 1e-5).max_deviation, 1e-3)
        col.add("alpha-polar-roundtrip", polar_roundtrip(alpha_gauge(g), pts, 1e-7).max_deviation, 1e-3)
    rev = reversal_check(alpha_gauge(g), xi_gauge(a), [np.ones(g.n)], rays=5, seed=seed)
    col.flag("polar-reverses-order-alpha-xi", rev.premise_holds and rev.holds, rev.violation,
             "" if rev.premise_holds else "premise failed")
    if g.n <= LP_LIMIT:
        worst = 0.0
        for _ in range(3):
            x = rng.uniform(0.0, 1.0, g.n)
            worst = max(worst, abs(qstab_gauge(g)(x) - alpha(complement(g), x).value))
        col.add("qstab-minkowski-functional", worst, 1e-8)
    col.add("luz-quadratic-midpoint-concavity", _midpoint_concavity(nonneg, rng), eps)
    return col.result()


def suite_luz(g: Graph, seed: int = 0, eps: float = 1e-6, samples: int = 5):
    rng = np.random.default_rng(seed)
    col = _Collector()
    for w in _weights(g.n, rng, 1):
        for k in range(samples):
            if not g.m:
                break
            rep = xi_vs_luz(random_generalized_adjacency(g, False, seed + k), w)
            col.add("xi-at-most-luz", -rep.checks["xi_le_luz"][1], eps)
            rep = xi_vs_luz(random_generalized_adjacency(g, True, seed + k), w)
            col.add("luz-equals-xi-nonnegative", rep.checks["xi_eq_luz"][1] - 1e-5 * (1.0 + rep.xi.value))
            if "rank_one_dual" in rep.checks:
                col.flag("luz-rank-one-dual-optimal", rep.checks["rank_one_dual"][0],
                         rep.checks["rank_one_dual"][1])
        rep = xi_vs_luz(adjacency_matrix(g), w)
        col.add("luz-equals-xi-nonnegative", rep.checks["xi_eq_luz"][1] - 1e-5 * (1.0 + rep.xi.value))
    deg = g.degrees()
    if g.m and np.all(deg == deg[0]):
        neg = adjacency_matrix(g).scaled(-1.0)
        r = luz(neg)
        ok = r.is_infinite
        if ok:
            d = r.certificate["direction"]
            C = np.eye(g.n) + tilde(neg).matrix
            ok = bool(np.all(d >= 0) and np.max(np.abs(C @ d)) <= 1e-8 and np.sum(np.sqrt(1.0) * d) > 0)
        x = xi(neg).value
        col.flag("luz-unbounded-for-negated-regular-adjacency", ok and x <= g.n + eps, x)
    return col.result()


def _sample_theta_points(g: Graph, rng, count: int):
    """Points of the theta body: scaled maximizers of random weights."""
    pts = []
    for _ in range(count):
        w = rng.uniform(0.0, 1.0, g.n)
        x = np.clip(theta(g, w).certificate["x"], 0.0, None)
        pts.append(rng.uniform(0.2, 1.0) * x)
    return pts


def suite_theta(g: Graph, seed: int = 0, eps: float = 1e-6, budget: int = 200, points: int = 4):
    rng = np.random.default_rng(seed)
    col = _Collector()
    gb = complement(g)
    one = np.ones(g.n)
    t = theta(g).value
    tp = theta(g, one, "theta_prime").value
    tq = theta(g, one, "theta_plus").value
    chain = [alpha(g).value, tp, t, tq]
    if g.n <= LP_LIMIT:
        chain.append(chi_f(gb).value)
    col.add("theta-variant-ordering", max(a - b for a, b in zip(chain, chain[1:])), 1e-5)
    prod = t * theta(gb).value
    if is_vertex_transitive(g):
        col.add("theta-product-equals-n-vertex-transitive", abs(prod - g.n), 1e-5)
    else:
        col.add("theta-product-at-least-n", g.n - prod, 1e-4)
    for name, a in _matrices(g, seed, 5):
        col.add("theta-at-most-xi", t - xi(a).value, eps)
        if a.nonneg:
            col.add("theta-plus-at-most-xi-nonnegative", tq - xi(a).value, eps)
    col.add("theta-at-most-best-xi", t - best_xi_over_A(g, one, budget=budget, seed=seed,
                                                        reference=t).value, 1e-5)
    col.add("best-hoffman-at-most-complement-theta",
            best_hoffman_over_A(g, one, budget=budget, seed=seed).value - theta(gb).value, 1e-5)
    mats = [a for _, a in _matrices(g, seed + 100, 4)]
    for x in _sample_theta_points(g, rng, points):
        worst = max(hoffman(a, x).value for a in mats)
        col.add("theta-body-inside-hoffman-corners", worst - 1.0, 1e-6)
    for a in mats:
        d = rng.uniform(0.0, 1.0, g.n)
        x = d / xi(a, d).value * rng.uniform(0.5, 1.0)
        col.add("xi-corner-inside-complement-theta-body", theta(g, x).value - 1.0, 1e-4)
    return col.result()


_RUNNERS = {"sandwich": suite_sandwich, "duality": suite_duality, "gauge": suite_gauge,
            "luz": suite_luz, "theta": suite_theta}


def run_suite(name: str, g: Graph, seed: int = 0, eps: float = 1e-6, budget: int = 200):
    if name == "all":
        out = []
        for s in SUITES:
            out += run_suite(s, g, seed, eps, budget)
        return sorted(out, key=lambda c: c.name)
    if name not in _RUNNERS:
        raise ValueError(f"suite must be one of {SUITES + ('all',)}")
    if name == "theta":
        return suite_theta(g, seed, eps, budget)
    return _RUNNERS[name](g, seed, eps)
