"""Core properties re-run under each kernel backend."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import BACKENDS
from reference import alpha_ref, chi_f_ref, hoffman_ref, xi_ref
from spectral_gauge._backend import use_backend
from spectral_gauge.bounds import hoffman, theta, xi
from spectral_gauge.graph import erdos_renyi, random_generalized_adjacency
from spectral_gauge.linalg import eigen_sym
from spectral_gauge.oracles import alpha, chi_f

graphs = st.builds(erdos_renyi, st.integers(2, 9), st.floats(0.1, 0.9), st.integers(0, 10 ** 6))


@pytest.mark.parametrize("name", BACKENDS)
@settings(max_examples=20)
@given(graphs, st.integers(0, 10 ** 6))
def test_oracles(name, g, seed):
    w = np.random.default_rng(seed).uniform(0, 1, g.n)
    with use_backend(name):
        assert alpha(g, w).value == pytest.approx(alpha_ref(g, w), abs=1e-12)
        assert chi_f(g, w).value == pytest.approx(chi_f_ref(g, w), abs=1e-8)


@pytest.mark.parametrize("name", BACKENDS)
@settings(max_examples=20)
@given(graphs, st.integers(0, 10 ** 6), st.booleans())
def test_spectral_bounds(name, g, seed, nonneg):
    a = random_generalized_adjacency(g, nonneg, seed)
    w = np.random.default_rng(seed).uniform(0, 1, g.n)
    with use_backend(name):
        assert np.allclose(eigen_sym(a.matrix).eigenvalues, np.linalg.eigvalsh(a.matrix), atol=1e-10)
        assert hoffman(a, w).value == pytest.approx(hoffman_ref(a.matrix, w), abs=1e-9)
        assert xi(a, w).value == pytest.approx(xi_ref(a.matrix, w), abs=1e-6 * (1 + w.sum()))


@pytest.mark.parametrize("name", BACKENDS)
@settings(max_examples=10)
@given(graphs, st.integers(0, 10 ** 6))
def test_theta_backends_agree(name, g, seed):
    w = np.random.default_rng(seed).uniform(0, 1, g.n)
    with use_backend(name):
        t = theta(g, w).value
    with use_backend("numpy"):
        assert t == pytest.approx(theta(g, w).value, abs=1e-7 * (1 + t))
