"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) or under pytest, where the
lines are repeated in the terminal summary.
"""

import sys
import time
from math import comb, sqrt

import numpy as np

from entanglib import state_library as lib
from entanglib.antisym_tensors import antisymmetrize, slater_rank_d2, wedge, wedge_pure_density
from entanglib.entanglement_measures import gme
from entanglib.hermitian_tensors import HermitianTensor, identity_on_sym, pure_density, to_realsym_poly
from entanglib.optim_engine import nuclear_norm, spectral_norm
from entanglib.separability import (ENTANGLED, SEPARABLE, real_strong_separability_sym, separability_via_nuclear,
                                    spec_floor_check, strong_separability_bisym)
from entanglib.sphere_covering import CoveringGrid, covering_radius_check
from entanglib.sym_poly import monomials
from entanglib.tensor_core import basis_tensor

from conftest import random_density, random_unit_sym

RESULTS = []


def report(k, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'}  criterion {k:>2}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_criterion_01_w_state():
    t0 = time.perf_counter()
    W = lib.w_state().tensor
    rep = gme(W, 0.3, m=9, nuclear=True)
    spec, nuc = rep.spectral, rep.nuclear
    terms = lib.w_zeta_decomposition()
    recon = sum(w * monomials(u, 3) for w, u in terms)
    err = float(np.max(np.abs(recon - W.coeffs)))
    total = float(sum(w for w, _ in terms))
    dt = time.perf_counter() - t0
    ok = (spec.contains(2 / 3) and abs(spec.lower - 2 / 3) < 1e-6
          and 1.35 <= nuc.upper <= 1.58 and nuc.contains(1.5)
          and err < 1e-12 and abs(total - 1.5) < 1e-12 and dt < 60)
    report(1, ok, f"spectral [{spec.lower:.9f}, {spec.upper:.6f}], nuclear [{nuc.lower:.6f}, {nuc.upper:.7f}], "
                  f"zeta err {err:.1e}, sum {total:.15f}, {dt:.1f}s")


def test_criterion_02_t_states():
    worst_polish, ok = 0.0, True
    for d in (3, 4, 5):
        for lam in (1, -1j):
            S = lib.t_lambda(d, lam).tensor
            cplx = spectral_norm(S, 0.3, field="complex")
            real = spectral_norm(S, 0.3, field="real")
            unfold = np.linalg.svd(S.to_dense().data.reshape(2, -1), compute_uv=False)[0]
            worst_polish = max(worst_polish, abs(cplx.lower - 1 / sqrt(2)))
            ok &= (cplx.contains(1 / sqrt(2)) and abs(cplx.lower - 1 / sqrt(2)) < 1e-8
                   and abs(unfold - 1 / sqrt(2)) < 1e-12 and real.contains(2 ** ((1 - d) / 2)))
    report(2, ok, f"d = 3,4,5, lambda in {{1, -i}}: worst complex polish error {worst_polish:.1e}")


def test_criterion_03_m4():
    est = spectral_norm(lib.m4_state().tensor, 0.5)
    ok = abs(est.lower - sqrt(2) / 3) < 1e-6 and est.upper <= 1.5 * est.lower
    report(3, ok, f"bracket [{est.lower:.9f}, {est.upper:.6f}], target {sqrt(2) / 3:.9f}")


def test_criterion_04_matrices():
    rng = np.random.default_rng(4)
    bad = 0
    for _ in range(50):
        p, q = rng.integers(1, 7), rng.integers(1, 9)
        M = rng.normal(size=(p, q)) + 1j * rng.normal(size=(p, q))
        s = np.linalg.svd(M, compute_uv=False)
        spec = spectral_norm(M, 0.3)
        nuc, _ = nuclear_norm(M, 0.3, method="lp")
        bad += not (spec.contains(s[0]) and nuc.contains(s.sum()))
    report(4, bad == 0, f"50 matrices up to 6x8, {bad} brackets missing the SVD values")


def test_criterion_05_motzkin_straus():
    cases = [("K2", lib.complete_graph(2), 2, None), ("K3", lib.complete_graph(3), 3, None),
             ("K4", lib.complete_graph(4), 4, None), ("C5", lib.cycle_graph(5), 2, 7)]
    ok, parts = True, []
    for name, A, kappa, m in cases:
        est = spectral_norm(lib.clique_tensor(A).tensor, 0.3, m=m, field="real")
        target = 1 - 1 / kappa
        ok &= est.contains(target, 1e-9)
        if name == "K3":
            ok &= abs(est.lower - target) < 1e-6
        parts.append(f"{name} [{est.lower:.6f}, {est.upper:.4f}]")
    report(5, ok, ", ".join(parts))


def test_criterion_06_sandwich():
    rng = np.random.default_rng(6)
    bad = 0
    for k in range(200):
        d = 2 + k % 3
        S = random_unit_sym(rng, 2, d)
        spec = spectral_norm(S, 0.3, net="bloch")
        nuc, _ = nuclear_norm(S, 0.3, net="bloch")
        slack = spec.epsilon_used
        bad += not (spec.upper <= 1 + slack and nuc.lower >= 1 - slack
                    and nuc.lower * spec.lower >= 1 - 2 * slack
                    and spec.upper * nuc.upper >= 1 - 1e-9)
    report(6, bad == 0, f"200 unit symmetric tensors (n = 2, d = 2..4), {bad} violations")


def test_criterion_07_covering():
    ok, parts = True, []
    for m, n in [(2, 3), (4, 2), (3, 4)]:
        for field in ("real", "complex"):
            dist = covering_radius_check(CoveringGrid(m, n, field), 10_000, np.random.default_rng(7))
            ok &= dist <= 1 / m
            parts.append(f"C({m},{n},{field[0]}) {dist:.3f}")
    report(7, ok, ", ".join(parts))


def test_criterion_08_ppt_coherence():
    rng = np.random.default_rng(8)
    disagree, counts = 0, {SEPARABLE: 0, ENTANGLED: 0, "inconclusive": 0}
    for shape in [(2, 2), (2, 3)]:
        for _ in range(100):
            v = separability_via_nuclear(random_density(rng, shape))
            counts[v.nuclear_status] += 1
            if v.nuclear_status == SEPARABLE and not v.ppt:
                disagree += 1
            if v.nuclear_status == ENTANGLED and v.ppt:
                disagree += 1
    bell = np.array([1, 0, 0, 1]) / sqrt(2)
    vb = separability_via_nuclear(HermitianTensor((2, 2), np.outer(bell, bell)))
    vi = separability_via_nuclear(HermitianTensor((2, 2), np.eye(4) / 4))
    ok = (disagree == 0 and vb.nuclear_status == ENTANGLED and vb.ppt is False
          and vi.status == SEPARABLE and len(vi.certificate) <= 17)
    report(8, ok, f"{disagree} disagreements; verdicts {counts}; Bell {vb.status}, "
                  f"I/4 {vi.status} with {len(vi.certificate)} terms")


def test_criterion_09_strong_separability():
    v1 = strong_separability_bisym(identity_on_sym(2, 2).scaled(1 / 3))
    v2 = strong_separability_bisym(pure_density(lib.w_state().tensor))
    ok = v1.status == SEPARABLE and v2.status == ENTANGLED and v2.nuclear_bracket[0] > 2
    report(9, ok, f"I_sym/3 {v1.status}; W density {v2.status}, bnuc lower {v2.nuclear_bracket[0]:.4f}")


def test_criterion_10_spectral_floor():
    rng = np.random.default_rng(10)
    bad, gaps = 0, []
    for shape in [(2, 2), (2, 2, 2)]:
        for _ in range(100):
            holds, est, floor = spec_floor_check(random_density(rng, shape))
            bad += not holds
        N = int(np.prod(shape))
        _, est, floor = spec_floor_check(HermitianTensor(shape, np.eye(N) / N))
        gaps.append(max(abs(est.upper - floor), abs(est.lower - floor)))
    ok = bad == 0 and max(gaps) < 1e-6
    report(10, ok, f"{bad} floor violations in 200 densities; I/N gap {max(gaps):.1e}")


def test_criterion_11_isotropic():
    R = lib.isotropic_moment_tensor(2, 2)
    P = to_realsym_poly(R)
    J, mc = lib.monte_carlo_moments(2, 2, samples=10**6, seed=11)
    exact = np.array([float(lib.sphere_moment(j)) for j in J])
    nz = exact != 0
    rel = float(np.max(np.abs(mc[nz] - exact[nz]) / exact[nz]))
    zero = float(np.max(np.abs(mc[~nz]))) if np.any(~nz) else 0.0
    np.testing.assert_allclose(P.coeffs, exact, atol=1e-15)
    est = spectral_norm(P, 0.3, field="real")
    v = real_strong_separability_sym(R)
    gamma32 = float(lib.isotropic_constant_gamma32(2, 2))
    ok = rel < 1e-2 and zero < 1e-2 * exact.max() and abs(est.lower - 0.375) < 1e-4 and est.contains(0.375) \
        and v.status == SEPARABLE
    report(11, ok, f"MC rel err {rel:.1e}; polish {est.lower:.8f}; verdict {v.status}; "
                   f"Gamma(3/2) closed form {gamma32:.6f} vs sphere integral 0.375")


def test_criterion_12_fermions():
    rng = np.random.default_rng(12)
    Q, _ = np.linalg.qr(rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5)))
    X = rng.normal(size=(3, 5)) + 1j * rng.normal(size=(3, 5))
    ok = abs(wedge(*Q.T[:3]).norm() - 1) < 1e-12
    ok &= abs(wedge(*X).norm() ** 2 - np.linalg.det(X.conj() @ X.T).real) < 1e-10
    ok &= wedge(X[0], X[1], X[0] - 2 * X[1]).norm() < 1e-12
    for n in range(1, 7):
        for d in range(1, min(n, 3) + 1):
            rows = [antisymmetrize(basis_tensor((n,) * d, np.unravel_index(k, (n,) * d))).dense.flat()
                    for k in range(n**d)]
            ok &= np.linalg.matrix_rank(np.array(rows)) == comb(n, d)
    e = np.eye(5)
    F = wedge(e[0], e[1]).dense.data + wedge(e[2], e[3]).dense.data
    G = wedge(e[0] + e[4], e[1]).dense.data + 2 * wedge(e[2], e[3] - e[1]).dense.data
    ok &= slater_rank_d2(F) == 2 and slater_rank_d2(G) == 2
    est = spectral_norm(wedge_pure_density(e[0], e[1]), 0.3, norm="spec")
    ok &= abs(est.lower - 0.5) < 1e-6 and est.contains(0.5)
    report(12, ok, f"wedge norms, dependence, C(n,d) for n <= 6, Slater rank 2, wedge density spec {est.lower:.9f}")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted((k, v) for k, v in globals().items() if k.startswith("test_criterion")):
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
