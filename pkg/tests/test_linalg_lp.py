import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import linprog

from entanglib.errors import ValidationError
from entanglib.linalg import eigh_desc, jacobi_eigh, sigma1_2x2_batch, weyl_slack
from entanglib.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, LPProblem, solve_lp, vertex_enumeration


@given(st.integers(1, 8), st.integers(0, 10**6))
def test_jacobi_matches_lapack(n, seed):
    rng = np.random.default_rng(seed)
    M = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    A = M + M.conj().T
    w, V = jacobi_eigh(A)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(A)[::-1], atol=1e-10)
    np.testing.assert_allclose(V @ np.diag(w) @ V.conj().T, A, atol=1e-10)
    assert weyl_slack(A, w, V) < 1e-9


def test_jacobi_rejects_non_hermitian():
    with pytest.raises(ValidationError):
        jacobi_eigh(np.array([[0, 1], [0, 0]]))


def test_eigh_desc_large_uses_lapack(rng):
    M = rng.normal(size=(100, 100))
    w, _ = eigh_desc(M + M.T)
    assert np.all(np.diff(w) <= 0)


def test_sigma1_2x2(rng):
    M = rng.normal(size=(50, 2, 2)) + 1j * rng.normal(size=(50, 2, 2))
    s = sigma1_2x2_batch(M[:, 0, 0], M[:, 0, 1], M[:, 1, 0], M[:, 1, 1])
    np.testing.assert_allclose(s, np.linalg.svd(M, compute_uv=False)[:, 0], rtol=1e-12)


@given(st.integers(1, 3), st.integers(2, 5), st.integers(0, 10**6))
def test_lp_matches_vertex_enumeration_and_scipy(m, extra, seed):
    rng = np.random.default_rng(seed)
    n = m + extra
    A = rng.normal(size=(m, n))
    x0 = rng.uniform(0.1, 1.0, size=n)
    b = A @ x0
    c = rng.uniform(0.1, 2.0, size=n)  # positive costs: bounded
    sol = solve_lp(LPProblem(c, A, b))
    assert sol.status == OPTIMAL
    assert np.isclose(sol.value, vertex_enumeration(LPProblem(c, A, b)), rtol=1e-8, atol=1e-9)
    ref = linprog(c, A_eq=A, b_eq=b, bounds=(0, None), method="highs")
    assert np.isclose(sol.value, ref.fun, rtol=1e-7, atol=1e-9)
    np.testing.assert_allclose(A @ sol.x, b, atol=1e-8)
    # strong duality
    assert np.isclose(sol.duals @ b, sol.value, rtol=1e-8, atol=1e-9)


def test_lp_statuses():
    assert solve_lp(LPProblem([1, 1], [[1, 1]], [-1])).status == INFEASIBLE
    assert solve_lp(LPProblem([-1, 0], [[1, -1]], [0])).status == UNBOUNDED


def test_lp_shape_validation():
    with pytest.raises(ValidationError):
        LPProblem([1, 1], [[1, 1, 1]], [1])


def test_lp_warm_start(rng):
    A = rng.normal(size=(2, 6))
    b = A @ rng.uniform(0.1, 1, size=6)
    c = rng.uniform(0.1, 1, size=6)
    first = solve_lp(LPProblem(c, A, b))
    again = solve_lp(LPProblem(c, A, b), basis=first.basis)
    assert np.isclose(first.value, again.value)
    assert again.iterations <= first.iterations
