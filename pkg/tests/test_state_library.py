from math import comb

import numpy as np
import pytest
import sympy as sp

from entanglib import state_library as lib
from entanglib.errors import ArgumentError, ValidationError
from entanglib.sym_poly import SymTensor, eval_poly, monomials


@pytest.mark.parametrize("label", lib.list_states())
def test_registry_states_are_normalized(label):
    st = lib.get_state(label)
    T = st.tensor
    if hasattr(T, "matrix"):
        assert np.isclose(np.trace(T.matrix).real, 1.0)
    elif label != "k3":
        assert np.isclose(T.norm(), 1.0)
    assert st.to_json()["label"] == st.label


def test_unknown_state():
    with pytest.raises(ArgumentError):
        lib.get_state("nope")


def test_w_zeta_decomposition_exact():
    terms = lib.w_zeta_decomposition()
    assert sum(w for w, _ in terms) == pytest.approx(1.5, abs=1e-15)
    f = sum(w * monomials(u, 3) for w, u in terms)
    np.testing.assert_allclose(f, lib.w_state().tensor.coeffs, atol=1e-12)
    for _, u in terms:
        assert np.isclose(np.linalg.norm(u), 1.0)


def test_dicke_states_orthonormal():
    D = np.array([lib.dicke_state(4, k).tensor.to_dense().flat() for k in range(5)])
    np.testing.assert_allclose(D @ D.conj().T, np.eye(5), atol=1e-12)
    with pytest.raises(ArgumentError):
        lib.dicke_state(3, 4)


def test_t_lambda_is_two_orthogonal_products():
    for d, lam in [(3, 1), (4, -1j), (5, 1)]:
        T = lib.t_lambda(d, lam).tensor.to_dense()
        M = T.data.reshape(2, -1)
        s = np.linalg.svd(M, compute_uv=False)
        np.testing.assert_allclose(s[:2], 1 / np.sqrt(2), atol=1e-12)
    with pytest.raises(ValidationError):
        lib.t_lambda(3, 2.0)


def test_ghz_and_bell():
    assert np.isclose(lib.ghz(4).tensor.norm(), 1.0)
    B = lib.bipartite_max_entangled(2, 3).tensor
    np.testing.assert_allclose(np.linalg.svd(B.data, compute_uv=False), 1 / np.sqrt(2))


def test_m4_components_are_orthogonal_and_unit():
    W0, W1 = lib.m4_components()
    a, b = W0.tensor.flat(), W1.tensor.flat()
    assert np.isclose(np.linalg.norm(a), 1) and abs(np.vdot(a, b)) < 1e-15
    assert np.isclose(lib.m4_state().tensor.norm(), 1.0)


def test_clique_tensor_polynomial():
    S = lib.clique_tensor(lib.complete_graph(3)).tensor
    x = np.array([1.0, 2.0, -1.0])
    A = lib.complete_graph(3)
    q = sum(A[i, j] * x[i] ** 2 * x[j] ** 2 for i in range(3) for j in range(3))
    assert np.isclose(eval_poly(S, x), q)
    S2 = lib.clique_tensor(A, power=2).tensor
    assert np.isclose(eval_poly(S2, x), q**2)


def test_clique_known_values():
    assert lib.clique_tensor(lib.cycle_graph(5), 1, 2).known_spectral == sp.Rational(1, 2)
    assert lib.clique_density(lib.complete_graph(3), 3).known_spectral == sp.Rational(11, 54)
    with pytest.raises(ValidationError):
        lib.clique_tensor(np.array([[1, 0], [0, 0]]))


def test_clique_density_is_density():
    R = lib.clique_density(lib.cycle_graph(4)).tensor
    assert np.isclose(np.trace(R.matrix).real, 1.0)
    assert np.min(np.linalg.eigvalsh(R.matrix)) > -1e-12


def test_sphere_moments():
    assert lib.sphere_moment((4, 0)) == sp.Rational(3, 8)
    assert lib.sphere_moment((2, 2)) == sp.Rational(1, 8)
    assert lib.sphere_moment((3, 1)) == 0
    assert lib.sphere_moment((2, 0, 0)) == sp.Rational(1, 3)
    P = lib.isotropic_moment_poly(2, 2)
    assert isinstance(P, SymTensor) and P.d == 4
    # E[(x1^2 + x2^2)^2] = 1 on the circle
    c = P.coeffs
    assert np.isclose(c[0] + 2 * c[2] + c[4], 1.0)


def test_isotropic_value_and_gamma32_constant():
    assert lib.isotropic_spectral_value(2, 2) == sp.Rational(3, 8)
    assert lib.isotropic_spectral_value(3, 1) == sp.Rational(1, 3)
    assert lib.isotropic_constant_gamma32(2, 2) != lib.isotropic_spectral_value(2, 2)


def test_monte_carlo_moments_close():
    J, mc = lib.monte_carlo_moments(2, 2, samples=200_000, seed=3)
    exact = np.array([float(lib.sphere_moment(j)) for j in J])
    np.testing.assert_allclose(mc, exact, atol=5e-3)
    assert len(J) == comb(5, 4)
