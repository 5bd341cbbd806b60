import numpy as np
import pytest
from hypothesis import given, strategies as st

from spectral_gauge.errors import NotPositiveDefiniteError, NotPSDError
from spectral_gauge.graph import adjacency_matrix, complete, cycle, edgeless, erdos_renyi
from spectral_gauge.linalg import (cholesky, eigen_sym, gram_root, normalize_tilde, pinv,
                                   psd_sqrt, tilde)


def _sym(rng, n):
    m = rng.normal(size=(n, n))
    return m + m.T


def _psd(rng, n, rank=None):
    f = rng.normal(size=(n, rank or n))
    return f @ f.T


def test_eigen_examples(backend):
    assert np.allclose(eigen_sym(np.diag([3.0, 1.0, 2.0])).eigenvalues, [1, 2, 3])
    assert np.allclose(eigen_sym([[0.0, 1.0], [1.0, 0.0]]).eigenvalues, [-1, 1], atol=1e-14)
    k3 = adjacency_matrix(complete(3)).matrix
    assert np.allclose(eigen_sym(k3).eigenvalues, [-1, -1, 2], atol=1e-13)


def test_eigen_matches_lapack(backend, rng):
    for n in (1, 2, 5, 13, 30):
        m = _sym(rng, n)
        d = eigen_sym(m)
        assert np.allclose(d.eigenvalues, np.linalg.eigvalsh(m), atol=1e-10 * (1 + np.abs(m).max()))


def test_eigen_residuals_many(backend, rng):
    worst_rec = worst_orth = 0.0
    for k in range(1000):
        n = 1 + k % 30
        m = _sym(rng, n)
        d = eigen_sym(m)
        worst_rec = max(worst_rec, np.linalg.norm(d.reconstruct() - m) / max(np.linalg.norm(m), 1e-300))
        worst_orth = max(worst_orth, np.abs(d.eigenvectors.T @ d.eigenvectors - np.eye(n)).max())
    assert worst_rec <= 1e-10
    assert worst_orth <= 1e-10


def test_permutation_invariance(rng):
    for n in (4, 9, 17):
        m = _sym(rng, n)
        p = np.eye(n)[rng.permutation(n)]
        assert np.allclose(eigen_sym(m).eigenvalues, eigen_sym(p.T @ m @ p).eigenvalues, atol=1e-9)


def test_ab_ba_nonzero_spectra(rng):
    for _ in range(20):
        k, n = rng.integers(2, 8, size=2)
        a, b = rng.normal(size=(k, n)), rng.normal(size=(n, k))
        ab = np.sort_complex(np.linalg.eigvals(a @ b))
        ba = np.linalg.eigvals(b @ a)
        ba = np.sort_complex(ba[np.abs(ba) > 1e-8])
        ab = ab[np.abs(ab) > 1e-8]
        assert np.allclose(ab, ba, atol=1e-8)


def test_psd_sqrt_examples():
    assert np.allclose(psd_sqrt(np.eye(3)), np.eye(3))
    r3 = np.sqrt(3.0)
    expected = np.array([[r3 + 1, r3 - 1], [r3 - 1, r3 + 1]]) / 2
    assert np.allclose(psd_sqrt([[2.0, 1.0], [1.0, 2.0]]), expected, atol=1e-13)
    assert np.allclose(psd_sqrt(np.diag([4.0, 0.0])), np.diag([2.0, 0.0]))
    with pytest.raises(NotPSDError):
        psd_sqrt(np.diag([1.0, -1.0]))


def test_pinv_examples(rng):
    assert np.allclose(pinv(np.diag([2.0, 0.0])), np.diag([0.5, 0.0]))
    for rank in (1, 3, 6):
        m = _psd(rng, 6, rank)
        assert np.allclose(pinv(pinv(m)), m, atol=1e-8 * np.abs(m).max())


def test_sqrt_commutes_with_pinv(rng):
    for rank in (2, 5, 7):
        m = _psd(rng, 7, rank)
        assert np.allclose(pinv(psd_sqrt(m)), psd_sqrt(pinv(m)), atol=1e-8)


def test_regular_pseudo_inverse_on_ones():
    # (I + A~)^+ 1 = 1 / (1 - lambda / tau) on the 2-regular C5
    a = adjacency_matrix(cycle(5))
    tau = 2 * np.cos(4 * np.pi / 5)
    m = np.eye(5) + normalize_tilde(a)
    assert np.allclose(pinv(m) @ np.ones(5), np.ones(5) / (1 - 2 / tau), atol=1e-12)


def test_cholesky_examples():
    assert np.allclose(cholesky(np.eye(3)), np.eye(3))
    assert np.allclose(cholesky(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]))
    assert np.allclose(cholesky([[4.0, 2.0], [2.0, 5.0]]), [[2.0, 0.0], [1.0, 2.0]])
    with pytest.raises(NotPositiveDefiniteError):
        cholesky([[1.0, 2.0], [2.0, 1.0]])


def test_tilde_examples():
    assert not np.any(normalize_tilde(adjacency_matrix(edgeless(4))))
    assert np.allclose(normalize_tilde(adjacency_matrix(complete(2))), [[0, 1], [1, 0]])
    phi = 2 * np.cos(np.pi / 5)  # -lambda_min(C5) = 1.6180339887...
    c5 = adjacency_matrix(cycle(5))
    assert np.allclose(normalize_tilde(c5), c5.matrix / phi, atol=1e-14)


def test_tiny_matrix_is_flagged():
    t = tilde(1e-14 * adjacency_matrix(complete(2)).matrix)
    assert t.treated_as_zero and not np.any(t.matrix)


@given(st.integers(2, 10), st.floats(0.2, 1.0), st.integers(0, 10 ** 5))
def test_gram_root_columns_unit(n, p, seed):
    g = erdos_renyi(n, p, seed)
    a = np.random.default_rng(seed).uniform(-1, 1, size=(n, n)) * adjacency_matrix(g, raw=True)
    a = np.triu(a, 1)
    a = a + a.T
    B = gram_root(a)
    assert np.allclose(np.linalg.norm(B, axis=0), 1.0, atol=1e-9)
    assert np.linalg.eigvalsh(np.eye(n) + normalize_tilde(a))[0] >= -1e-10
