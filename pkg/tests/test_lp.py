import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import linprog

from spectral_gauge.lp import INFEASIBLE, UNBOUNDED, LinearProgram, solve_lp
from spectral_gauge.oracles import enumerate_stable_sets
from spectral_gauge.graph import cycle


def test_box():
    s = solve_lp(LinearProgram([1.0, 1.0], np.eye(2), [1.0, 1.0]))
    assert s.optimal and s.objective == pytest.approx(2.0)


def test_unbounded():
    s = solve_lp(LinearProgram([1.0], np.zeros((1, 1)), [0.0]))
    assert s.status == UNBOUNDED


def test_infeasible():
    s = solve_lp(LinearProgram([1.0], [[1.0]], [-1.0]))
    assert s.status == INFEASIBLE


def test_chi_f_lp_c5():
    fam = enumerate_stable_sets(cycle(5))
    M = fam.incidence_matrix()[1:]  # drop the empty set
    assert M.shape[0] == 10
    s = solve_lp(LinearProgram(np.ones(10), M.T, np.ones(5), ">=", sense="min"))
    assert s.objective == pytest.approx(2.5, abs=1e-10)
    assert s.dual_objective == pytest.approx(2.5, abs=1e-10)


def test_free_and_bounded_variables():
    # min x - y  s.t. x + y = 1, -2 <= x, y <= 3 (x free above)
    lp = LinearProgram([1.0, -1.0], [[1.0, 1.0]], [1.0], "=", sense="min",
                       lower=[-2.0, -np.inf], upper=[np.inf, 3.0])
    s = solve_lp(lp)
    assert s.objective == pytest.approx(-5.0)
    assert np.allclose(s.x, [-2.0, 3.0])


def test_degenerate_cycling_example():
    # Beale's example cycles under the textbook rule without anti-cycling
    c = np.array([0.75, -150.0, 0.02, -6.0])
    A = np.array([[0.25, -60.0, -0.04, 9.0], [0.5, -90.0, -0.02, 3.0], [0.0, 0.0, 1.0, 0.0]])
    b = np.array([0.0, 0.0, 1.0])
    s = solve_lp(LinearProgram(c, A, b))
    assert s.objective == pytest.approx(0.05, abs=1e-10)


def _random_lp(seed):
    rng = np.random.default_rng(seed)
    m, n = rng.integers(1, 7), rng.integers(1, 7)
    A = rng.normal(size=(m, n))
    b = rng.uniform(0.1, 2.0, size=m)
    c = rng.normal(size=n)
    return c, A, b


@given(st.integers(0, 10 ** 6))
def test_matches_highs(seed):
    c, A, b = _random_lp(seed)
    ref = linprog(-c, A_ub=A, b_ub=b, bounds=(0, 10), method="highs")
    s = solve_lp(LinearProgram(c, A, b, upper=np.full(len(c), 10.0)))
    assert s.optimal
    assert s.objective == pytest.approx(-ref.fun, abs=1e-8 * (1 + abs(ref.fun)))
    # weak and strong duality, and primal feasibility
    assert s.dual_objective == pytest.approx(s.objective, abs=1e-8 * (1 + abs(s.objective)))
    assert np.all(A @ s.x <= b + 1e-9)


@given(st.integers(0, 10 ** 6), st.randoms(use_true_random=False))
def test_row_permutation_invariance(seed, r):
    c, A, b = _random_lp(seed)
    perm = list(range(len(b)))
    r.shuffle(perm)
    up = np.full(len(c), 10.0)
    s1 = solve_lp(LinearProgram(c, A, b, upper=up))
    s2 = solve_lp(LinearProgram(c, A[perm], b[perm], upper=up))
    assert s1.objective == pytest.approx(s2.objective, abs=1e-9 * (1 + abs(s1.objective)))
