"""Product-state scans: grids on some factors, exact linear algebra on the rest.

For a dense tensor the last two modes are maximized exactly (top singular
value of the contracted matrix); for a Hermitian operator the largest mode
is maximized exactly (extreme eigenvalues of the reduced matrix).  Every
other mode runs over a covering net, so the certified bracket only pays
for the gridded modes.
"""

from math import ceil, prod

import numpy as np

from .errors import ArgumentError
from .grid_eval import TopK
from .linalg import eigh_desc, sigma1_2x2_batch, weyl_slack
from .sphere_covering import CoveringGrid, bloch_net_for_radius, check_budget, dedup_vectors

FACTOR_POINTS_MAX = 2_000_000


def factor_net(n, delta, field="complex", m=None):
    """A phase-reduced net on one factor with covering radius <= delta.

    Product objectives are invariant under a phase on each factor, so qubits
    use the Bloch net and larger complex factors the phase net.
    """
    if field == "real":
        return CoveringGrid(m or int(ceil(1.0 / delta - 1e-12)), n, "real", "full")
    if n == 1:
        return None
    if n == 2:
        return CoveringGrid(m, 2, "complex", "bloch") if m else bloch_net_for_radius(delta)
    return CoveringGrid(m or int(ceil(1.0 / delta - 1e-12)), n, "complex", "phase")


def factor_vectors(grid, budget=None):
    if grid is None:
        return np.ones((1, 1), dtype=np.complex128)
    check_budget(grid.count, min(FACTOR_POINTS_MAX, budget or FACTOR_POINTS_MAX))
    return dedup_vectors(grid.all_vectors())


def _sigma1(M):
    if M.shape[-2:] == (2, 2):
        return sigma1_2x2_batch(M[..., 0, 0], M[..., 0, 1], M[..., 1, 0], M[..., 1, 1])
    return np.linalg.svd(M, compute_uv=False)[..., 0]


def dense_product_scan(T, vecs, top=1, budget=None, chunk=1 << 21):
    """max over grid factors (modes 0..q-1) of sigma_1 of the remaining matrix.

    ``vecs`` lists the factor vector sets for the first q modes of T; T has
    q + 2 modes.  Returns a TopK over combined indices (mixed radix).
    """
    T = np.asarray(T, dtype=np.complex128)
    q = len(vecs)
    if T.ndim != q + 2:
        raise ArgumentError("need exactly two exact modes")
    sizes = [len(v) for v in vecs]
    check_budget(prod(sizes), budget)
    red = TopK("abs", top)
    if q == 0:
        s = _sigma1(T[None])[0]
        red.update(np.array([s]), lambda pos: pos)
        return red, sizes
    last = vecs[-1]
    per_row = max(1, chunk // max(1, len(last) * T.shape[-1] * T.shape[-2]))

    def rec(A, k, base):
        # A: (r, n_k, ..., n_{q-1}, a, b) for a block of indices of modes < k
        if k == q - 1:
            B = np.einsum("sb,rb...->rs...", last, A)
            vals = _sigma1(B).ravel()
            red.update(vals, lambda pos: base[pos // len(last)] * len(last) + pos % len(last))
            return
        for i, x in enumerate(vecs[k]):
            rec(np.tensordot(A, x, axes=([1], [0])), k + 1, base * sizes[k] + i)

    if q == 1:
        B = np.einsum("sb,b...->s...", last, T)
        red.update(_sigma1(B).ravel(), lambda pos: pos)
        return red, sizes
    X0 = vecs[0]
    for a in range(0, len(X0), per_row):
        blk = X0[a:a + per_row]
        A = np.tensordot(blk, T, axes=([1], [0]))
        rec(A, 1, np.arange(a, a + len(blk), dtype=np.int64))
    return red, sizes


def unravel(index, sizes):
    out = []
    for s in reversed(sizes):
        out.append(int(index % s))
        index //= s
    return out[::-1]


def herm_product_scan(H, shape, grid_modes, exact_mode, vecs, top=1, budget=None):
    """Max |x^dagger H x| over grid factors on ``grid_modes`` and the exact extreme
    eigenvalue on ``exact_mode``.  Returns TopK over (combined index), keyed by
    |eig|, with value = signed eigenvalue."""
    d = len(shape)
    order = list(grid_modes) + [exact_mode]
    if sorted(order) != list(range(d)):
        raise ArgumentError("modes must partition the shape")
    T = np.asarray(H, dtype=np.complex128).reshape(tuple(shape) + tuple(shape))
    T = np.transpose(T, order + [d + k for k in order])
    sizes = [len(v) for v in vecs]
    check_budget(prod(sizes), budget)
    q = len(grid_modes)
    red = TopK("abs", top)

    def finish(R, base):
        # R: (s, ne, ne)
        R = 0.5 * (R + np.conj(np.swapaxes(R, -1, -2)))
        if R.shape[-1] == 1:
            ev = R[..., 0, 0].real[:, None]
        else:
            ev = np.linalg.eigvalsh(R)
        lo, hi = ev[:, 0], ev[:, -1]
        vals = np.where(np.abs(hi) >= np.abs(lo), hi, lo)
        red.update(vals, lambda pos: base * len(vals) + pos)

    def rec(A, k, base):
        # A has axes (ket_k.., ket_e, bra_k.., bra_e) for remaining modes k..q-1
        X = vecs[k]
        if k == q - 1:
            R = np.einsum("sa,sc,ac...->s...", np.conj(X), X, _pair_front(A))
            finish(R.reshape(len(X), shape[exact_mode], shape[exact_mode]), base)
            return
        for i, x in enumerate(X):
            rest = A.ndim // 2
            B = np.tensordot(A, x, axes=([rest], [0]))
            B = np.tensordot(np.conj(x), B, axes=([0], [0]))
            rec(B, k + 1, base * sizes[k] + i)

    if q == 0:
        finish(T.reshape(1, shape[exact_mode], shape[exact_mode]), 0)
    else:
        rec(T, 0, 0)
    return red, sizes


def _pair_front(A):
    """Move the leading bra axis next to the leading ket axis: (k0, .., b0, ..) -> (k0, b0, ...)."""
    rest = A.ndim // 2
    return np.moveaxis(A, rest, 1)


def reduced_top_vector(H, shape, grid_modes, exact_mode, factors, sign):
    """Exact factor on ``exact_mode`` given grid factors (list aligned with grid_modes)."""
    from .polish import reduced_hermitian

    xs = [None] * len(shape)
    for k, x in zip(grid_modes, factors):
        xs[k] = x
    xs[exact_mode] = np.zeros(shape[exact_mode])
    R = reduced_hermitian(H, shape, xs, exact_mode)
    w, V = np.linalg.eigh(0.5 * (R + R.conj().T) * sign)
    xs[exact_mode] = V[:, -1]
    return xs


def matrix_singular_values(T):
    """Singular values (descending) from the eigen-decomposition of the smaller Gram matrix."""
    T = np.asarray(T, dtype=np.complex128)
    if T.ndim != 2:
        raise ArgumentError("matrix expected")
    A = T.conj().T @ T if T.shape[1] <= T.shape[0] else T @ T.conj().T
    w, V = eigh_desc(A)
    return np.sqrt(np.maximum(w, 0.0)), A, w, V


def sigma1_bracket(T):
    """(lower, upper, left, right) for sigma_1: upper from Gram eigenvalues plus backward error."""
    T = np.asarray(T, dtype=np.complex128)
    s, A, w, V = matrix_singular_values(T)
    slack = weyl_slack(A, w, V)
    upper = float(np.sqrt(max(w[0], 0.0) + slack))
    if T.shape[1] <= T.shape[0]:
        right = V[:, 0]
        left = T @ right
    else:
        left = V[:, 0]
        right = T.conj().T @ left
    nl, nr = np.linalg.norm(left), np.linalg.norm(right)
    if nl == 0 or nr == 0:
        return 0.0, upper, np.eye(T.shape[0])[0] + 0j, np.eye(T.shape[1])[0] + 0j
    left, right = left / nl, right / nr
    lower = float(abs(np.conj(left) @ T @ right))
    return lower, max(upper, lower), left, right
