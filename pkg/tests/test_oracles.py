"""Frozen reference values, each checked by a route independent of the library code."""

from itertools import permutations
from math import comb

import numpy as np
import pytest
from scipy import integrate
from scipy.optimize import linprog

from entanglib import state_library as lib
from entanglib.entanglement_measures import symmetric_alpha_bounds
from entanglib.hermitian_tensors import HermitianTensor, partial_transpose
from entanglib.optim_engine import bspec, matrix_spectral, matrix_nuclear, nuclear_norm_grid, resolve_net
from entanglib.separability import separability_via_nuclear, spec_floor_check
from entanglib.sphere_covering import CoveringGrid
from entanglib.sym_poly import monomials, symmetrize
from entanglib.tensor_core import DenseTensor

from conftest import random_density

BELL = np.array([1, 0, 0, 1]) / np.sqrt(2)

# frozen values
BELL_PT_MIN = -0.5
SPHERE_X4_N2 = 0.375
T3_UNFOLD_SIGMA = 1 / np.sqrt(2)
K3_DENSITY_BSPEC = 11 / 54
BELL_DENSITY_NUC = 3.0
SYM22_LOWER = 1 / np.sqrt(3)


def test_symmetrize_matches_permutation_sum(rng):
    X = rng.normal(size=(2, 2, 2)) + 1j * rng.normal(size=(2, 2, 2))
    avg = sum(np.transpose(X, p) for p in permutations(range(3))) / 6
    np.testing.assert_allclose(symmetrize(DenseTensor(X)).to_dense().data, avg, atol=1e-14)


@pytest.mark.parametrize("m,n,bound", [(4, 2, 0.25), (2, 3, 0.5)])
def test_covering_radius_brute_force(m, n, bound, rng):
    X = CoveringGrid(m, n, "real").all_vectors()
    u = rng.normal(size=(1000, n))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    dist = np.min(np.linalg.norm(u[:, None, :] - X[None, :, :], axis=2), axis=1)
    assert dist.max() <= bound


def test_matrix_routes_against_lapack_svd(rng):
    M = rng.normal(size=(3, 4)) + 1j * rng.normal(size=(3, 4))
    s = np.linalg.svd(M, compute_uv=False)
    assert matrix_spectral(M).contains(s[0], 1e-12)
    assert matrix_nuclear(M)[0].contains(s.sum(), 1e-10)


def test_bell_partial_transpose():
    R = HermitianTensor((2, 2), np.outer(BELL, BELL))
    # partial transpose by hand: swap the second-mode indices
    M = np.outer(BELL, BELL).reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)
    np.testing.assert_allclose(partial_transpose(R, 1).matrix, M)
    assert np.isclose(np.linalg.eigvalsh(M).min(), BELL_PT_MIN)


def test_sphere_moment_wallis_and_monte_carlo():
    wallis, _ = integrate.quad(lambda t: np.cos(t) ** 4, 0, 2 * np.pi)
    assert np.isclose(wallis / (2 * np.pi), SPHERE_X4_N2)
    assert float(lib.sphere_moment((4, 0))) == SPHERE_X4_N2
    x = np.random.default_rng(5).normal(size=(400_000, 2))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    assert abs(np.mean(x[:, 0] ** 4) - SPHERE_X4_N2) < 3e-3


def test_t3_amplitudes_and_unfolding():
    T = lib.t_lambda(3).tensor.to_dense().data
    ref = np.zeros((2, 2, 2))
    ref[0, 0, 0] = 0.5
    ref[1, 1, 0] = ref[1, 0, 1] = ref[0, 1, 1] = -0.5
    np.testing.assert_allclose(T, ref, atol=1e-15)
    s = np.linalg.svd(T.reshape(2, 4), compute_uv=False)
    assert np.isclose(s[0], T3_UNFOLD_SIGMA)


def test_t4_minus_i_amplitudes():
    T = lib.t_lambda(4, -1j).tensor.to_dense().data
    # (-i u^4 + i conj(u)^4)/sqrt2 with u = (1, i)/sqrt2 has real amplitudes
    u = np.array([1, 1j]) / np.sqrt(2)
    u4 = np.einsum("a,b,c,e->abce", u, u, u, u)
    np.testing.assert_allclose(T, (-1j * u4 + 1j * np.conj(u4)) / np.sqrt(2), atol=1e-15)
    assert np.max(np.abs(T.imag)) < 1e-15


def test_k3_density_bspec_against_sampling():
    R = lib.clique_density(lib.complete_graph(3), 3).tensor
    est = bspec(R.base, 0.3, m=3)
    assert est.contains(K3_DENSITY_BSPEC, 1e-9)
    # sampled lower bound <x (x) x | R | x (x) x> over unit x
    rng = np.random.default_rng(2)
    x = rng.normal(size=(20000, 3)) + 1j * rng.normal(size=(20000, 3))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    xx = np.einsum("ka,kb->kab", x, x).reshape(-1, 9)
    vals = np.einsum("ki,ij,kj->k", xx.conj(), R.matrix, xx).real
    assert vals.max() <= K3_DENSITY_BSPEC + 1e-12
    assert vals.max() > K3_DENSITY_BSPEC - 1e-2


def test_bell_density_nuclear_against_analytic_witness():
    R = HermitianTensor((2, 2), np.outer(BELL, BELL))
    # W = P - (I - P)/3 has |<x(x)y|W|x(x)y>| <= 1/3 on product states and <W, R> = 1
    P = np.outer(BELL, BELL)
    W = P - (np.eye(4) - P) / 3
    rng = np.random.default_rng(4)
    a = rng.normal(size=(20000, 2)) + 1j * rng.normal(size=(20000, 2))
    b = rng.normal(size=(20000, 2)) + 1j * rng.normal(size=(20000, 2))
    a /= np.linalg.norm(a, axis=1, keepdims=True)
    b /= np.linalg.norm(b, axis=1, keepdims=True)
    v = np.einsum("ka,kb->kab", a, b).reshape(-1, 4)
    sup = np.abs(np.einsum("ki,ij,kj->k", v.conj(), W, v).real).max()
    assert sup <= 1 / 3 + 1e-12
    assert np.isclose(np.trace(W @ P).real / (1 / 3), BELL_DENSITY_NUC)
    v = separability_via_nuclear(R)
    assert v.nuclear_bracket[0] - 1e-9 <= BELL_DENSITY_NUC <= v.nuclear_bracket[1] + 1e-6


def test_full_grid_lp_matches_scipy_and_column_generation():
    W = lib.w_state().tensor
    g = resolve_net(2, "complex", 6, "bloch")
    full, _ = nuclear_norm_grid(W, g, full_grid=True)
    cg, _ = nuclear_norm_grid(W, g)
    assert full.contains(1.5) and cg.contains(1.5)
    assert cg.upper <= full.upper + 1e-9
    X = g.all_vectors(dedup=True)
    P = monomials(X, 3)
    C = np.vstack([P.real.T, P.imag.T])
    b = np.concatenate([W.coeffs.real, W.coeffs.imag])
    ref = linprog(np.ones(2 * len(X)), A_eq=np.hstack([C, -C]), b_eq=b, bounds=(0, None), method="highs")
    assert np.isclose(full.upper, ref.fun, rtol=1e-8)


def test_symmetric_alpha_lower_is_inverse_sqrt_dim():
    lo, _ = symmetric_alpha_bounds(2, 2)
    assert np.isclose(lo, SYM22_LOWER) and comb(3, 2) == 3


def test_spec_floor_on_random_densities(rng):
    for shape in [(2, 2), (2, 3)]:
        for _ in range(5):
            holds, est, floor = spec_floor_check(random_density(rng, shape))
            assert holds and est.upper >= floor - 1e-9
