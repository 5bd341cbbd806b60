import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from reference import max_clique_weight
from spectral_gauge.bounds import xi
from spectral_gauge.gauge import (GaugeOracle, alpha_gauge, check_gauge_axioms, chi_f_gauge,
                                  hoffman_gauge, l1_gauge, linf_gauge, luz_gauge,
                                  minkowski_functional, polar, polar_roundtrip, qstab_gauge,
                                  reversal_check, theta_gauge, xi_gauge)
from spectral_gauge.graph import (adjacency_matrix, complement, complete, cycle, disjoint_union,
                                  erdos_renyi, path, petersen, random_generalized_adjacency)
from spectral_gauge.oracles import alpha, chi_f

C5 = cycle(5)


def test_polar_l1():
    r = polar(l1_gauge(2), [2.0, 3.0])
    assert r.value == pytest.approx(3.0, abs=1e-9)
    assert np.allclose(r.maximizer, [0.0, 1.0], atol=1e-9)


def test_polar_hoffman_c5():
    r = polar(hoffman_gauge(adjacency_matrix(C5)), np.ones(5))
    assert r.value == pytest.approx(np.sqrt(5.0), abs=1e-5)
    assert r.lower <= r.upper + 1e-12


@pytest.mark.parametrize("g", [C5, path(4), disjoint_union(complete(3), complete(2)), petersen()])
def test_polar_alpha_is_chi_f(g):
    r = polar(alpha_gauge(g), np.ones(g.n), tol=1e-8)
    assert r.value == pytest.approx(chi_f(g).value, abs=1e-4)


def test_axioms_examples():
    assert check_gauge_axioms(l1_gauge(5)).max_violation <= 1e-14  # round-off only
    assert check_gauge_axioms(xi_gauge(adjacency_matrix(petersen())), trials=10).max_violation <= 1e-6
    sq = GaugeOracle(4, lambda w: float(w @ w), lambda w: 2 * w, "square")
    rep = check_gauge_axioms(sq)
    assert rep.violations["homogeneity"] > 1e-3 and not rep.ok()


@pytest.mark.parametrize("variant", ["theta", "theta_prime", "theta_plus"])
def test_axioms_theta_variants(variant):
    g = erdos_renyi(6, 0.5, 2)
    assert check_gauge_axioms(theta_gauge(g, variant), trials=6).max_violation <= 1e-6


def test_axioms_luz_nonneg():
    a = random_generalized_adjacency(erdos_renyi(7, 0.5, 1), True, 3)
    assert check_gauge_axioms(luz_gauge(a), trials=10).max_violation <= 1e-5


def test_roundtrip_examples():
    pts = np.random.default_rng(0).uniform(0.1, 1, (3, 4))
    assert polar_roundtrip(l1_gauge(4), pts).max_deviation <= 1e-6
    assert polar_roundtrip(alpha_gauge(path(3)), pts[:, :3], tol=1e-7).max_deviation <= 1e-4


def test_roundtrip_hoffman_c5():
    pts = np.random.default_rng(1).uniform(0.1, 1, (10, 5))
    rep = polar_roundtrip(hoffman_gauge(adjacency_matrix(C5)), pts, tol=1e-5)
    assert rep.max_deviation <= 1e-3


def test_reversal_examples():
    pts = [np.ones(5)]
    rep = reversal_check(alpha_gauge(C5), xi_gauge(adjacency_matrix(C5)), pts, rays=5)
    assert rep.premise_holds and rep.holds
    k = l1_gauge(5)
    rep = reversal_check(k, k, pts, rays=3)
    assert rep.holds and rep.polars[0][0] == pytest.approx(rep.polars[0][1], abs=1e-9)
    rep = reversal_check(linf_gauge(5), chi_f_gauge(C5), pts, rays=5, tol=1e-7)
    assert rep.premise_holds and rep.holds
    # the premise fails in the other order and is reported as such
    assert not reversal_check(chi_f_gauge(C5), linf_gauge(5), pts, rays=3).premise_holds


def test_minkowski_functional():
    g = C5
    k = qstab_gauge(g)
    for x in np.random.default_rng(2).uniform(0, 1, (5, 5)):
        assert k(x) == pytest.approx(max_clique_weight(g, x), abs=1e-8)
    assert k(np.zeros(5)) == 0.0
    # unit box corner: gauge is the max norm
    A = np.vstack([np.eye(3)])
    assert minkowski_functional(A, np.ones(3), [0.2, 0.7, 0.1]) == pytest.approx(0.7, abs=1e-10)


@settings(max_examples=8)
@given(st.builds(erdos_renyi, st.integers(2, 7), st.floats(0.2, 0.8), st.integers(0, 10 ** 6)),
       st.integers(0, 10 ** 6))
def test_polar_bracket_and_duality(g, seed):
    rng = np.random.default_rng(seed)
    a = random_generalized_adjacency(g, False, seed)
    k = hoffman_gauge(a)
    z = rng.uniform(0.0, 1.0, g.n)
    r = polar(k, z)
    assert k(r.maximizer) <= 1 + 1e-6
    assert r.maximizer @ z == pytest.approx(r.lower, abs=1e-12 * (1 + r.lower))
    x = xi(a, z).value
    assert abs(r.value - x) <= 1e-4 * (1 + x)
    for w in rng.uniform(0, 1, (5, g.n)):
        assert w @ z <= k(w) * r.upper * (1 + 1e-6) + 1e-12
