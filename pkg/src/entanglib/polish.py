"""Local ascent on the sphere: shifted power steps and alternating updates.

Every routine only accepts steps that increase the objective, so the
returned value is never below the starting value.
"""

import numpy as np

from .sym_poly import monomial_jacobian, monomials

MAX_ITERS = 500
REL_GAIN = 1e-13
SHIFTS = (0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 64.0, 256.0, 1024.0)


def _normalize(x):
    nrm = np.linalg.norm(x)
    return x / nrm if nrm > 0 else x


def shifted_ascent(objective, direction, x0, real=False, max_iters=MAX_ITERS, tol=REL_GAIN):
    """Maximize ``objective`` on the unit sphere by x <- normalize(direction(x) + a x).

    ``objective`` is batched: it maps an array of points (k, n) to k values.
    All shifts a in SHIFTS are tried at once and the best improving one is
    kept.  Stops when no shift helps or the relative gain drops below ``tol``.
    """
    x = _normalize(np.asarray(x0, dtype=float if real else np.complex128).copy())
    val = float(objective(x[None])[0])
    shifts = np.asarray(SHIFTS)[:, None]
    for _ in range(int(max_iters)):
        g = direction(x)
        if real:
            g = np.real(g)
        gn = np.linalg.norm(g)
        if gn == 0 or not np.isfinite(gn):
            break
        cand = g[None, :] / gn + shifts * x[None, :]
        cand /= np.linalg.norm(cand, axis=1, keepdims=True)
        vals = objective(cand)
        k = int(np.argmax(vals))
        if not vals[k] > val:
            break
        gain = (vals[k] - val) / max(abs(val), 1e-300)
        x, val = cand[k], float(vals[k])
        if gain < tol:
            break
    return float(val), x


def polish_holomorphic(weights, n, d, x0, real=False, max_iters=MAX_ITERS):
    """Maximize |p(x)|, p(x) = sum_J w_J x^J, from x0."""
    w = np.asarray(weights)

    def obj(X):
        return np.abs(monomials(X, d) @ w)

    def direction(x):
        p = monomials(x, d) @ w
        grad = monomial_jacobian(x, d).T @ w
        ph = p / abs(p) if abs(p) > 0 else 1.0
        return ph * np.conj(grad)

    return shifted_ascent(obj, direction, x0, real=real, max_iters=max_iters)


def polish_hermitian_sym(G, n, d, v0, sign=None, real=False, max_iters=MAX_ITERS):
    """Maximize |h(v)|, h(v) = m(v)^dagger G m(v) with raw monomials m, from v0."""
    G = np.asarray(G)

    def h(V):
        M = monomials(V, d)
        return np.real(np.einsum("kj,jl,kl->k", np.conj(M), G, M))

    if sign is None:
        sign = 1.0 if h(np.asarray(v0)[None])[0] >= 0 else -1.0

    def obj(V):
        return sign * h(V)

    def direction(v):
        m = monomials(v, d)
        jac = monomial_jacobian(v, d)
        return sign * (np.conj(jac).T @ (G @ m))

    val, v = shifted_ascent(obj, direction, v0, real=real, max_iters=max_iters)
    return abs(val), v, sign


def contract_except(T, factors, skip):
    """Contract T with every factor except mode ``skip``; returns a vector."""
    out = T
    for k in range(len(factors) - 1, -1, -1):
        if k == skip:
            continue
        out = np.tensordot(out, factors[k], axes=([k], [0]))
    return out


def als_dense(T, factors, max_iters=MAX_ITERS, tol=REL_GAIN, real=False):
    """Maximize |T(x_1, ..., x_d)| by exact single-factor updates."""
    T = np.asarray(T)
    xs = [_normalize(np.asarray(f, dtype=float if real else np.complex128).copy()) for f in factors]
    d = len(xs)
    val = abs(_eval_dense(T, xs))
    for _ in range(int(max_iters)):
        old = val
        for k in range(d):
            c = contract_except(T, xs, k)
            if real:
                c = np.real(c)
            nrm = np.linalg.norm(c)
            if nrm == 0:
                continue
            cand = np.conj(c) / nrm
            trial = xs[:k] + [cand] + xs[k + 1:]
            tv = abs(_eval_dense(T, trial))
            if tv >= val:
                xs, val = trial, tv
        if val - old <= tol * max(old, 1e-300):
            break
    return float(val), xs


def _eval_dense(T, xs):
    out = T
    for k in range(len(xs) - 1, -1, -1):
        out = np.tensordot(out, xs[k], axes=([k], [0]))
    return complex(out)


def reduced_hermitian(H, shape, xs, keep):
    """Matrix R with v^dagger R v = x^dagger H x, x the product with v at mode ``keep``."""
    T = np.asarray(H).reshape(tuple(shape) + tuple(shape))
    if len(shape) == 2:
        # two modes: plain matrix products
        y = xs[1 - keep]
        if keep == 0:
            return np.swapaxes(T @ y, 1, 2) @ np.conj(y)
        return np.swapaxes(np.tensordot(np.conj(y), T, axes=([0], [0])), 1, 2) @ y
    rem = list(range(len(shape)))
    for k in range(len(shape)):
        if k == keep:
            continue
        i = rem.index(k)
        T = np.tensordot(T, xs[k], axes=([len(rem) + i], [0]))
        T = np.tensordot(T, np.conj(xs[k]), axes=([i], [0]))
        rem.pop(i)
    return T


def herm_value(H, shape, xs):
    x = xs[0]
    for f in xs[1:]:
        x = np.kron(x, f)
    return float(np.real(np.conj(x) @ np.asarray(H) @ x))


def als_hermitian(H, shape, factors, sign=None, max_iters=MAX_ITERS, tol=REL_GAIN):
    """Maximize |x^dagger H x| over product states x = x_1 (x) ... (x) x_d.

    Each factor update solves the reduced Hermitian eigenproblem exactly
    (top eigenvector for sign +1, bottom for sign -1).
    """
    xs = [_normalize(np.asarray(f, dtype=np.complex128).copy()) for f in factors]
    val = herm_value(H, shape, xs)
    if sign is None:
        sign = 1.0 if val >= 0 else -1.0
    val *= sign
    for _ in range(int(max_iters)):
        old = val
        for k in range(len(shape)):
            Rk = reduced_hermitian(H, shape, xs, k)
            Rk = 0.5 * (Rk + np.conj(Rk.T))
            w, V = np.linalg.eigh(sign * Rk)
            # the top eigenvalue is the new objective value
            if w[-1] >= val:
                xs, val = xs[:k] + [V[:, -1]] + xs[k + 1:], float(w[-1])
        if val - old <= tol * max(abs(old), 1e-300):
            break
    return abs(float(val)), xs, sign
