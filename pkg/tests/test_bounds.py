import numpy as np
import pytest
from hypothesis import given, strategies as st

from reference import chi_f_ref, hoffman_ref, theta_ref, xi_ref
from spectral_gauge.bounds import (corner_membership, hoffman, hoffman_via_sdp, perron_bound,
                                   perron_vector, ratio_bound_closed_form, theta, theta_plus,
                                   theta_prime, xi)
from spectral_gauge.errors import NotApplicableError
from spectral_gauge.graph import (GeneralizedAdjacency, adjacency_matrix, complement, complete,
                                  cycle, disjoint_union, edgeless, erdos_renyi, path, petersen,
                                  random_generalized_adjacency, star)
from spectral_gauge.linalg import gram_root, normalize_tilde
from spectral_gauge.oracles import alpha, chi_f, enumerate_stable_sets

SQRT5 = np.sqrt(5.0)


def test_hoffman_examples(backend):
    w = np.array([0.2, 1.7, 0.4])
    assert hoffman(adjacency_matrix(edgeless(3)), w).value == pytest.approx(1.7)
    assert hoffman(adjacency_matrix(cycle(5))).value == pytest.approx(SQRT5, abs=1e-12)
    assert hoffman(adjacency_matrix(petersen())).value == pytest.approx(2.5, abs=1e-12)


def test_hoffman_sdp_examples():
    assert hoffman_via_sdp(adjacency_matrix(edgeless(2)), [3.0, 1.0]).value == pytest.approx(3.0, abs=1e-6)
    assert hoffman_via_sdp(adjacency_matrix(complete(3))).value == pytest.approx(3.0, abs=1e-6)
    assert hoffman_via_sdp(adjacency_matrix(cycle(5))).value == pytest.approx(SQRT5, abs=1e-6)


def test_hoffman_supergradient():
    a = random_generalized_adjacency(erdos_renyi(8, 0.5, 2), seed=4)
    w = np.random.default_rng(0).uniform(0.1, 1, 8)
    r = hoffman(a, w)
    g = r.certificate["supergradient"]
    # a convex, homogeneous function: value = <g, w> and g supports it elsewhere
    assert g @ w == pytest.approx(r.value, abs=1e-10)
    for z in np.random.default_rng(1).uniform(0, 1, (10, 8)):
        assert g @ z <= hoffman(a, z).value + 1e-10


def test_xi_examples(backend):
    for n in (2, 4, 6):
        assert xi(adjacency_matrix(complete(n))).value == pytest.approx(1.0, abs=1e-6)
    assert xi(adjacency_matrix(petersen())).value == pytest.approx(4.0, abs=1e-6)
    w = np.array([0.5, 0.25, 1.0, 2.0])
    assert xi(adjacency_matrix(edgeless(4)), w).value == pytest.approx(w.sum(), abs=1e-6)


def test_xi_certificate():
    a = random_generalized_adjacency(erdos_renyi(9, 0.45, 8), seed=2)
    w = np.random.default_rng(3).uniform(0, 1, 9)
    r = xi(a, w)
    B = gram_root(a)
    x, Y = r.certificate["x"], r.certificate["Y"]
    assert np.all(x >= 0)
    assert np.linalg.eigvalsh(B @ np.diag(x) @ B)[-1] <= 1 + 1e-8
    assert np.trace(Y) >= r.value - 1e-12
    assert r.gap <= 1e-7 * (1 + r.value)


def test_ratio_bound():
    tau = 2 * np.cos(6 * np.pi / 7)
    assert ratio_bound_closed_form(adjacency_matrix(cycle(7))) == pytest.approx(7 / (1 - 2 / tau), abs=1e-10)
    assert ratio_bound_closed_form(adjacency_matrix(cycle(5))) == pytest.approx(SQRT5, abs=1e-10)
    with pytest.raises(NotApplicableError):
        ratio_bound_closed_form(adjacency_matrix(star(3)))
    with pytest.raises(NotApplicableError):
        ratio_bound_closed_form(adjacency_matrix(edgeless(3)))


def test_perron_examples():
    assert perron_bound(petersen()).value == pytest.approx(4.0, abs=1e-9)
    assert perron_bound(cycle(5)).value == pytest.approx(SQRT5, abs=1e-9)
    r = perron_bound(star(3))
    assert r.value == pytest.approx(3.0, abs=1e-9)
    p = perron_vector(star(3))[2]
    assert np.all(p > 0) and np.min(p) == pytest.approx(1 / np.sqrt(6), abs=1e-12)
    assert r.diagnostics["dual_margin"] >= -1e-9
    with pytest.raises(NotApplicableError):
        perron_bound(disjoint_union(cycle(3), cycle(3)))
    with pytest.raises(NotApplicableError):
        perron_bound(edgeless(3))


def test_theta_wrappers():
    g = cycle(5)
    assert theta(g).value == pytest.approx(SQRT5, abs=1e-6)
    assert theta_prime(g).value == pytest.approx(SQRT5, abs=1e-6)
    assert theta_plus(g).value == pytest.approx(SQRT5, abs=1e-6)
    with pytest.raises(ValueError):
        theta(g, variant="theta_minus")


def test_membership_examples():
    g = erdos_renyi(7, 0.4, 5)
    for seed in range(3):
        a = random_generalized_adjacency(g, seed == 0, seed)
        for s in enumerate_stable_sets(g).sets():
            chi = np.zeros(7)
            chi[list(s)] = 1.0
            assert corner_membership("U_A", chi, a=a)
    k2 = adjacency_matrix(complete(2))
    assert not corner_membership("U_A", [1.0, 1.0], a=k2)
    assert corner_membership("STAB", [0.5, 0.5], graph=complete(2))
    assert not corner_membership("QSTAB", [0.6, 0.6, 0.6], graph=complete(3))
    assert corner_membership("H_A", np.full(5, 1 / SQRT5) * 0.99, a=adjacency_matrix(cycle(5)))
    assert corner_membership("TH", np.full(5, 1 / SQRT5) * 0.99, graph=cycle(5))
    with pytest.raises(ValueError):
        corner_membership("BALL", [0.0], graph=edgeless(1))


graphs = st.builds(erdos_renyi, st.integers(1, 10), st.floats(0.0, 1.0), st.integers(0, 10 ** 6))


@given(graphs, st.integers(0, 10 ** 6), st.booleans())
def test_hoffman_swapped_and_reference(g, seed, nonneg):
    a = random_generalized_adjacency(g, nonneg, seed)
    w = np.random.default_rng(seed).uniform(0, 1, g.n)
    r = hoffman(a, w)  # raises if the swapped forms disagree
    assert r.value == pytest.approx(hoffman_ref(a.matrix, w), abs=1e-9 * (1 + r.value))


@given(graphs, st.integers(0, 10 ** 6))
def test_hoffman_eigen_equals_sdp(g, seed):
    a = random_generalized_adjacency(g, False, seed)
    w = np.random.default_rng(seed).uniform(0, 1, g.n)
    assert hoffman_via_sdp(a, w).value == pytest.approx(hoffman(a, w).value, abs=1e-6)


@given(graphs, st.integers(0, 10 ** 6), st.booleans())
def test_sandwich(g, seed, nonneg):
    rng = np.random.default_rng(seed)
    w = rng.uniform(0, 1, g.n)
    a = random_generalized_adjacency(g, nonneg, seed)
    h, x = hoffman(a, w).value, xi(a, w).value
    assert w.max() - 1e-6 <= h <= chi_f(g, w).value + 1e-6
    assert alpha(g, w).value - 1e-6 <= x <= w.sum() + 1e-6


@given(graphs, st.integers(0, 10 ** 6))
def test_cauchy_product(g, seed):
    rng = np.random.default_rng(seed)
    a = random_generalized_adjacency(g, False, seed)
    w, z = rng.uniform(0, 1, g.n), rng.uniform(0, 1, g.n)
    assert w @ z <= hoffman(a, w).value * xi(a, z).value + 1e-6


@given(st.builds(erdos_renyi, st.integers(2, 8), st.floats(0.2, 0.8), st.integers(0, 10 ** 6)),
       st.integers(0, 10 ** 6))
def test_theta_below_xi(g, seed):
    w = np.random.default_rng(seed).uniform(0, 1, g.n)
    t, tq = theta(g, w).value, theta_plus(g, w).value
    for k in range(3):
        assert t <= xi(random_generalized_adjacency(g, False, seed + k), w).value + 1e-6
        assert tq <= xi(random_generalized_adjacency(g, True, seed + k), w).value + 1e-6


@pytest.mark.parametrize("g", [cycle(5), cycle(7), petersen()])
def test_vertex_transitive_product(g):
    assert theta(g).value * theta(complement(g)).value == pytest.approx(g.n, abs=1e-5)


@given(st.builds(erdos_renyi, st.integers(2, 12), st.floats(0.3, 1.0), st.integers(0, 10 ** 6)))
def test_perron_bounds_alpha(g):
    if g.is_connected():
        assert perron_bound(g).value >= alpha(g).value - 1e-6


@given(st.builds(erdos_renyi, st.integers(2, 9), st.floats(0.1, 0.9), st.integers(0, 10 ** 6)))
def test_variant_chain(g):
    one = np.ones(g.n)
    chain = [alpha(g).value, theta_prime(g).value, theta(g).value, theta_plus(g).value,
             chi_f(complement(g)).value]
    assert all(a <= b + 1e-5 for a, b in zip(chain, chain[1:]))
