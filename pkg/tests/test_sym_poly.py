from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from entanglib.errors import DimensionError, ValidationError
from entanglib.sym_poly import (BiSymTensor, SymTensor, bisym_eval, enumerate_J, eval_poly, monomials,
                                multinomial, poly_pow, sym_dim, symmetrize)
from entanglib.tensor_core import DenseTensor, rank_one

from conftest import random_unit_sym


@given(st.integers(1, 4), st.integers(0, 5))
def test_exponent_enumeration(n, d):
    J = enumerate_J(d, n)
    assert len(J) == comb(n + d - 1, d)
    assert J == sorted(J, reverse=True)
    assert all(sum(j) == d for j in J)


@given(st.integers(1, 4), st.integers(1, 5))
def test_multinomials_sum_to_n_power_d(n, d):
    assert sum(multinomial(j) for j in enumerate_J(d, n)) == n**d


def test_multinomial_values():
    assert multinomial((2, 1)) == 3
    assert multinomial((1, 1, 1)) == 6
    assert multinomial((4, 0)) == 1


@given(st.integers(1, 3), st.integers(1, 4), st.integers(0, 10**6))
def test_dense_round_trip(n, d, seed):
    S = random_unit_sym(np.random.default_rng(seed), n, d)
    D = S.to_dense()
    assert np.isclose(D.norm(), S.norm())
    assert SymTensor.from_dense(D).allclose(S, atol=1e-12)


def test_from_dense_rejects_nonsymmetric():
    with pytest.raises(ValidationError):
        SymTensor.from_dense(DenseTensor(np.array([[0.0, 1.0], [0.0, 0.0]])))


def test_symmetrize_is_projection(rng):
    X = DenseTensor(rng.normal(size=(2, 2, 2)))
    S = symmetrize(X)
    assert symmetrize(S.to_dense()).allclose(S)
    # orthogonal projection: <X - PX, PX> = 0
    R = X.data - S.to_dense().data
    assert abs(np.vdot(R.ravel(), S.to_dense().data.ravel())) < 1e-12


def test_eval_matches_dense_contraction(rng):
    S = random_unit_sym(rng, 3, 3)
    x = rng.normal(size=3) + 1j * rng.normal(size=3)
    direct = np.einsum("abc,a,b,c->", S.to_dense().data, x, x, x)
    assert np.isclose(eval_poly(S, x), direct)
    with pytest.raises(DimensionError):
        eval_poly(S, np.ones(2))


def test_rank_one_coefficients_are_monomials(rng):
    v = rng.normal(size=3) + 1j * rng.normal(size=3)
    S = SymTensor.from_dense(rank_one([v, v, v]))
    np.testing.assert_allclose(S.coeffs, monomials(v, 3), atol=1e-12)


def test_weighted_and_dicke_views():
    W = SymTensor.from_dict(2, 3, {(2, 1): 1 / np.sqrt(3)})
    np.testing.assert_allclose(W.weighted(), [0, np.sqrt(3), 0, 0])
    np.testing.assert_allclose(W.dicke(), [0, 1, 0, 0])
    assert np.isclose(W.norm(), 1.0)


def test_from_dict_rejects_bad_exponent():
    with pytest.raises(ValidationError):
        SymTensor.from_dict(2, 3, {(2, 2): 1.0})


def test_real_field_rejects_complex():
    with pytest.raises(ValidationError):
        SymTensor(2, 1, [1j, 0], "real")


def test_poly_pow_matches_sympy():
    import sympy as sp

    x, y = sp.symbols("x y")
    got = poly_pow({(2, 0): 1, (0, 2): 1}, 3)
    ref = sp.Poly(sp.expand((x**2 + y**2) ** 3), x, y).as_dict()
    assert {k: v for k, v in got.items()} == {k: int(v) for k, v in ref.items()}


def test_json_round_trip(rng):
    S = random_unit_sym(rng, 3, 2)
    assert SymTensor.from_json(S.to_json()).allclose(S, atol=0)
    R = random_unit_sym(rng, 2, 3, real=True)
    back = SymTensor.from_json(R.to_json())
    assert back.field == "real" and back.allclose(R, atol=0)


def test_bisym_pure_evaluates_to_modulus_squared(rng):
    S = random_unit_sym(rng, 2, 3)
    B = BiSymTensor.pure(S)
    x = rng.normal(size=2) + 1j * rng.normal(size=2)
    assert np.isclose(bisym_eval(B, x, np.conj(x)), abs(eval_poly(S, x)) ** 2)
    v = S.to_dense().flat()
    np.testing.assert_allclose(B.dense_matrix(), np.outer(v, v.conj()), atol=1e-12)
    d = S.dicke()
    np.testing.assert_allclose(B.dicke_matrix(), np.outer(d, d.conj()), atol=1e-12)


def test_bisym_hermitian_flag_checked():
    with pytest.raises(ValidationError):
        BiSymTensor(2, 1, [[0, 1], [0, 0]], hermitian=True)


def test_sym_dim():
    assert sym_dim(2, 3) == 4
    assert sym_dim(3, 2) == 6
