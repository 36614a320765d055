"""Invariants checked on random inputs."""

import numpy as np
from hypothesis import given, settings, strategies as st

from entanglib.antisym_tensors import wedge
from entanglib.hermitian_tensors import HermitianTensor, partial_trace, partial_transpose
from entanglib.optim_engine import matrix_spectral, nuclear_norm, spectral_norm
from entanglib.separability import ppt_check
from entanglib.sphere_covering import CoveringGrid, nearest_distance
from entanglib.sym_poly import SymTensor, eval_poly
from entanglib.tensor_core import DenseTensor, inner_product, rank_one

from conftest import random_density, random_unit_sym

seeds = st.integers(0, 2**32 - 1)


def _cvec(rng, n):
    return rng.normal(size=n) + 1j * rng.normal(size=n)


@given(seeds)
def test_inner_product_is_conjugate_symmetric(seed):
    rng = np.random.default_rng(seed)
    a = DenseTensor(_cvec(rng, 8).reshape(2, 2, 2))
    b = DenseTensor(_cvec(rng, 8).reshape(2, 2, 2))
    assert np.isclose(inner_product(a, b), np.conj(inner_product(b, a)))


@given(seeds, st.lists(st.integers(1, 4), min_size=1, max_size=3))
def test_rank_one_norm_is_product(seed, dims):
    rng = np.random.default_rng(seed)
    vs = [_cvec(rng, n) for n in dims]
    assert np.isclose(rank_one(vs).norm(), np.prod([np.linalg.norm(v) for v in vs]))


@given(seeds, st.integers(2, 3), st.integers(2, 3))
def test_symmetric_eval_homogeneous(seed, n, d):
    rng = np.random.default_rng(seed)
    S = random_unit_sym(rng, n, d)
    x, t = _cvec(rng, n), complex(rng.normal(), rng.normal())
    assert np.isclose(eval_poly(S, t * x), t**d * eval_poly(S, x))


@given(seeds)
def test_partial_maps_preserve_trace(seed):
    rng = np.random.default_rng(seed)
    R = random_density(rng, (2, 3))
    for k in (0, 1):
        assert np.isclose(np.trace(partial_trace(R, k).matrix), 1.0)
        PT = partial_transpose(R, k).matrix
        np.testing.assert_allclose(PT, PT.conj().T, atol=1e-14)
        assert np.isclose(np.trace(PT), 1.0)


@given(seeds, st.integers(1, 6))
def test_mixtures_of_products_are_ppt(seed, k):
    rng = np.random.default_rng(seed)
    M = np.zeros((4, 4), dtype=complex)
    for w in rng.dirichlet(np.ones(k)):
        a, b = _cvec(rng, 2), _cvec(rng, 2)
        x = np.kron(a / np.linalg.norm(a), b / np.linalg.norm(b))
        M += w * np.outer(x, x.conj())
    assert ppt_check(HermitianTensor((2, 2), M), tol=1e-10)[0]


@given(seeds, st.integers(2, 4), st.integers(2, 4))
def test_matrix_spectral_scales(seed, p, q):
    rng = np.random.default_rng(seed)
    M = rng.normal(size=(p, q)) + 1j * rng.normal(size=(p, q))
    c = 0.5 + 3 * rng.random()
    a, b = matrix_spectral(M), matrix_spectral(c * M)
    assert np.isclose(b.lower, c * a.lower) and np.isclose(b.upper, c * a.upper)


@given(seeds)
def test_wedge_swaps_sign(seed):
    rng = np.random.default_rng(seed)
    a, b, c = _cvec(rng, 4), _cvec(rng, 4), _cvec(rng, 4)
    np.testing.assert_allclose(wedge(a, b, c).dense.data, -wedge(b, a, c).dense.data, atol=1e-12)


@given(seeds, st.sampled_from([(2, 3), (4, 2), (3, 4)]))
def test_net_covers_random_point(seed, mn):
    rng = np.random.default_rng(seed)
    m, n = mn
    u = rng.normal(size=n)
    assert nearest_distance(CoveringGrid(m, n, "real"), u / np.linalg.norm(u)) <= 1 / m


@settings(max_examples=8)
@given(seeds, st.integers(2, 3))
def test_sandwich_on_unit_symmetric_tensors(seed, d):
    S = random_unit_sym(np.random.default_rng(seed), 2, d)
    spec = spectral_norm(S, 0.3, net="bloch")
    nuc, dec = nuclear_norm(S, 0.3, net="bloch")
    assert spec.lower <= spec.upper and nuc.lower <= nuc.upper
    assert spec.lower <= 1 + 1e-9 and nuc.upper >= 1 - 1e-9
    assert spec.upper * nuc.upper >= 1 - 1e-9
    np.testing.assert_allclose(dec.symmetric_coefficients(2, d), S.coeffs, atol=1e-7)


@given(seeds)
def test_symmetric_json_round_trip(seed):
    S = random_unit_sym(np.random.default_rng(seed), 3, 2)
    assert SymTensor.from_json(S.to_json()).allclose(S, atol=0)
