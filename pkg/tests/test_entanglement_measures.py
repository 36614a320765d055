import numpy as np
import pytest

from entanglib import state_library as lib
from entanglib.entanglement_measures import (alpha_lower_bound, gme, gme_from_spectral, nuclear_energy,
                                             symmetric_alpha_bounds)
from entanglib.errors import ArgumentError, ValidationError
from entanglib.sym_poly import SymTensor
from entanglib.tensor_core import DenseTensor, rank_one


def test_gme_from_spectral_swaps_ends():
    lo, hi = gme_from_spectral(0.5, 0.8)
    assert np.isclose(lo, np.sqrt(0.4)) and np.isclose(hi, 1.0)
    assert gme_from_spectral(1.0, 1.0) == (0.0, 0.0)
    assert gme_from_spectral(0.9, 1.2)[0] == 0.0


def test_gme_of_w():
    rep = gme(lib.w_state().tensor, 0.3, m=9, net="bloch")
    exact = np.sqrt(2 * (1 - 2 / 3))
    assert rep.gme_bracket[0] - 1e-9 <= exact <= rep.gme_bracket[1] + 1e-9
    assert rep.log_spec[0] <= -2 * np.log(2 / 3) + 1e-9 <= rep.log_spec[1] + 2e-9
    js = rep.to_json()
    assert set(js) >= {"gme", "log_spec", "spectral"}


def test_gme_of_product_state_is_zero(rng):
    x = rng.normal(size=2) + 1j * rng.normal(size=2)
    x /= np.linalg.norm(x)
    rep = gme(rank_one([x, x, x]), 0.3, net="bloch")
    assert rep.gme_bracket[0] < 1e-6


def test_gme_of_bell_matrix():
    rep = gme(lib.get_state("bell").tensor)
    lo, hi = rep.gme_bracket
    assert lo - 1e-9 <= np.sqrt(2 - np.sqrt(2)) <= hi + 1e-9
    # a non-symmetric maximally entangled 2x3 state goes through the exact matrix route
    rep = gme(lib.bipartite_max_entangled(2, 3).tensor)
    np.testing.assert_allclose(rep.gme_bracket, np.sqrt(2 - np.sqrt(2)), atol=1e-9)


def test_gme_needs_unit_state():
    with pytest.raises(ValidationError):
        gme(DenseTensor(np.ones((2, 2))))


def test_nuclear_energy_of_t3():
    lo, hi = nuclear_energy(lib.t_lambda(3).tensor, 0.3, m=7)
    assert lo - 1e-9 <= 2 * np.log(np.sqrt(2)) <= hi + 1e-9


def test_gme_with_nuclear_flag():
    rep = gme(lib.get_state("bell").tensor, nuclear=True)
    lo, hi = rep.nuclear_energy
    assert lo - 1e-9 <= 2 * np.log(np.sqrt(2)) <= hi + 1e-9
    rep = gme(lib.bipartite_max_entangled(2, 3).tensor, nuclear=True)
    np.testing.assert_allclose(rep.nuclear_energy, 2 * np.log(np.sqrt(2)), atol=1e-9)


def test_alpha_lower_bound():
    assert np.isclose(alpha_lower_bound((2, 2, 2)), 2 / 3)
    assert np.isclose(alpha_lower_bound((2, 2, 2), "real"), 0.5)
    assert np.isclose(alpha_lower_bound((3, 4)), 1 / np.sqrt(3))
    assert np.isclose(alpha_lower_bound((2, 2, 2, 2)), np.sqrt(2) / 3)
    with pytest.raises(ArgumentError):
        alpha_lower_bound((3,))


def test_alpha_bound_attained_by_w():
    est = gme(lib.w_state().tensor, 0.3, m=9, net="bloch").spectral
    assert est.lower >= alpha_lower_bound((2, 2, 2)) - 1e-9


def test_symmetric_alpha_bounds():
    lo, hi = symmetric_alpha_bounds(2, 3)
    assert np.isclose(lo, 0.5) and lo <= hi
    assert hi < 0.9
    lo, hi = symmetric_alpha_bounds(3, 2)
    assert np.isclose(lo, 1 / np.sqrt(6)) and np.isclose(hi, 1 / np.sqrt(3), atol=1e-9)


def test_field_override():
    T = SymTensor.from_dict(2, 3, {(3, 0): 1 / np.sqrt(2), (0, 3): 1 / np.sqrt(2)}, "real")
    real = gme(T, 0.3, field="real")
    cplx = gme(T, 0.3, field="complex", net="bloch")
    assert real.spectral.contains(1 / np.sqrt(2)) and cplx.spectral.contains(1 / np.sqrt(2))
