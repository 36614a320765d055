"""Fast evaluation of polynomial objectives over covering nets.

A homogeneous polynomial in the grid variables is written as a sum over
per-variable features: z^a (holomorphic) or z^a conj(z)^b (Hermitian
forms).  The coefficient tensor U over features is contracted once with
the features of the inner (fast) variables, after which every block of
outer grid points costs one matrix product.  Values are divided by
|a|^deg so they equal the objective at the normalized point.

Reductions keep the best ``k`` entries under a key (|v|, Re v or -Re v),
with ties broken by the smaller raw grid index so results do not depend
on chunking or threading.
"""

from concurrent.futures import ThreadPoolExecutor
from math import prod

import numpy as np

from .config import threads
from .sphere_covering import check_budget
from .sym_poly import monomial_table, monomials

INNER_MAX = 1 << 21
V_MAX = 1 << 23
CHUNK = 1 << 22

KEYS = ("abs", "re", "-re", "absre")


class TopK:
    """Best ``k`` (key, raw index, value) triples."""

    def __init__(self, key="abs", k=1):
        if key not in KEYS:
            raise ValueError(f"key must be one of {KEYS}")
        self.key, self.k = key, int(k)
        self.keys = np.empty(0)
        self.index = np.empty(0, dtype=np.int64)
        self.values = np.empty(0, dtype=np.complex128)

    def fresh(self):
        return TopK(self.key, self.k)

    def _key(self, vals):
        if self.key == "abs":
            return np.abs(vals)
        if self.key == "absre":
            return np.abs(np.real(vals)).astype(float)
        if self.key == "re":
            return np.real(vals).astype(float)
        return -np.real(vals).astype(float)

    def update(self, vals, gidx, valid=None):
        """vals: flat values; gidx: callable mapping positions to raw indices."""
        key = self._key(vals)
        if valid is not None:
            key = np.where(valid, key, -np.inf)
        if key.size == 0:
            return
        if self.k == 1:
            pos = np.array([int(np.argmax(key))])
        else:
            kk = min(self.k, key.size)
            pos = np.argpartition(-key, kk - 1)[:kk]
        pos = pos[np.isfinite(key[pos])]
        if pos.size == 0:
            return
        self._merge(key[pos], np.asarray(gidx(pos), dtype=np.int64), np.asarray(vals[pos], dtype=np.complex128))

    def _merge(self, keys, index, values):
        keys = np.concatenate([self.keys, keys])
        index = np.concatenate([self.index, index])
        values = np.concatenate([self.values, values])
        order = np.lexsort((index, -keys))[: self.k]
        self.keys, self.index, self.values = keys[order], index[order], values[order]

    def merge(self, other):
        self._merge(other.keys, other.index, other.values)

    @property
    def best(self):
        return (float(self.keys[0]), int(self.index[0]), complex(self.values[0])) if self.keys.size else None


def holo_coeff_tensor(n, d, weights):
    """U over per-variable powers so that sum U[e] prod z_k^{e_k} = sum_J w_J z^J."""
    J, _, _ = monomial_table(d, n)
    w = np.asarray(weights)
    U = np.zeros((d + 1,) * n, dtype=np.result_type(w.dtype, float))
    for k, j in enumerate(J):
        U[tuple(j)] += w[k]
    return U


def herm_coeff_tensor(n, d, G):
    """U with sum U[e] prod feat = sum_{j,l} G_{jl} conj(v)^j v^l; feature a*(d+1)+b."""
    J, _, _ = monomial_table(d, n)
    G = np.asarray(G)
    D = (d + 1) ** 2
    U = np.zeros((D,) * n, dtype=np.result_type(G.dtype, float))
    for a, ja in enumerate(J):
        for b, jb in enumerate(J):
            U[tuple(ja * (d + 1) + jb)] += G[a, b]
    return U


def features(z, d, hermitian=False):
    z = np.asarray(z)
    pw = np.empty(z.shape + (d + 1,), dtype=z.dtype)
    pw[..., 0] = 1
    for p in range(1, d + 1):
        pw[..., p] = pw[..., p - 1] * z
    if not hermitian:
        return pw
    out = np.conj(pw)[..., :, None] * pw[..., None, :]
    return out.reshape(z.shape + ((d + 1) ** 2,))


def structured_scan(grid, U, d, deg, reducers, hermitian=False, half=False, budget=None):
    """Evaluate sum U * features / |a|^deg on every point of a product-structured net."""
    n = grid.n
    count = grid.count // 2 if half else grid.count
    check_budget(count, budget)
    Z = grid.variable_values()
    if grid.field == "real" and not np.iscomplexobj(U):
        Z = [z.real for z in Z]
    feats = [features(z, d, hermitian) for z in Z]
    r2s = [np.abs(z) ** 2 for z in Z]
    sizes = [len(z) for z in Z]
    D = feats[0].shape[1]
    p = n
    for q in range(n + 1):
        inner = prod(sizes[q:])
        if inner <= INNER_MAX and D**q * inner <= V_MAX:
            p = q
            break
    inner = prod(sizes[p:])
    T = np.asarray(U).reshape((D**p,) + (D,) * (n - p))
    for k in range(p, n):
        T = np.tensordot(T, feats[k], axes=([1], [1]))
    V = T.reshape(D**p, inner)
    r2_inner = np.zeros(1)
    for k in range(p, n):
        r2_inner = (r2_inner[:, None] + r2s[k][None, :]).ravel()
    n_outer = prod(sizes[:p])
    first_row = grid.center // inner if half else 0
    rows = max(1, CHUNK // max(inner, D**p))
    jobs = [(a, min(a + rows, n_outer)) for a in range(first_row, n_outer, rows)]
    expo = deg / 2.0

    def run(job):
        a, b = job
        local = [r.fresh() for r in reducers]
        r_idx = np.arange(a, b, dtype=np.int64)
        if p:
            digits = np.unravel_index(r_idx, sizes[:p])
            F = feats[0][digits[0]]
            r2o = r2s[0][digits[0]]
            for k in range(1, p):
                F = (F[:, :, None] * feats[k][digits[k]][:, None, :]).reshape(len(r_idx), -1)
                r2o = r2o + r2s[k][digits[k]]
        else:
            F = np.ones((1, 1))
            r2o = np.zeros(1)
        vals = F @ V
        r2 = r2o[:, None] + r2_inner[None, :]
        zero = r2 == 0
        vals = vals / np.where(zero, 1.0, r2) ** expo
        flat = vals.ravel()
        valid = ~zero.ravel()
        if half and a * inner <= grid.center:
            g = (r_idx[:, None] * inner + np.arange(inner)[None, :]).ravel()
            valid &= g > grid.center

        def gidx(pos):
            return (a + pos // inner) * inner + pos % inner

        for r in local:
            r.update(flat, gidx, valid)
        return local

    results = _map(run, jobs)
    for local in results:
        for r, lr in zip(reducers, local):
            r.merge(lr)
    return reducers


def generic_scan(grid, objective, reducers, half=False, budget=None, chunk=1 << 16):
    """Evaluate ``objective`` (batched over unit vectors) on every point of the net."""
    count = grid.count // 2 if half else grid.count
    check_budget(count, budget)
    start = grid.center + 1 if half else 0
    jobs = [(a, min(a + chunk, grid.raw_total)) for a in range(start, grid.raw_total, chunk)]

    def run(job):
        local = [r.fresh() for r in reducers]
        idx, X = grid.points(*job)
        vals = np.asarray(objective(X))
        for r in local:
            r.update(vals, lambda pos: idx[pos])
        return local

    for local in _map(run, jobs):
        for r, lr in zip(reducers, local):
            r.merge(lr)
    return reducers


def _map(fn, jobs):
    k = threads()
    if k <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with ThreadPoolExecutor(max_workers=k) as pool:
        return list(pool.map(fn, jobs))


def scan_holomorphic(grid, n, d, weights, reducers, half=False, budget=None):
    """Scan p(x) = sum_J w_J x^J (raw monomials) over the net."""
    if grid.kind == "bloch":
        w = np.asarray(weights)

        def obj(X):
            return monomials(X, d) @ w

        return generic_scan(grid, obj, reducers, half=half, budget=budget)
    U = holo_coeff_tensor(n, d, weights)
    return structured_scan(grid, U, d, d, reducers, hermitian=False, half=half, budget=budget)


def scan_hermitian(grid, n, d, G, reducers, half=False, budget=None):
    """Scan h(v) = sum G_{jl} conj(v)^j v^l (real when G is Hermitian)."""
    if grid.kind == "bloch":
        G = np.asarray(G)

        def obj(X):
            P = monomials(X, d)
            return np.real(np.einsum("kj,jl,kl->k", np.conj(P), G, P))

        return generic_scan(grid, obj, reducers, half=half, budget=budget)
    U = herm_coeff_tensor(n, d, G)
    return structured_scan(grid, U, d, 2 * d, reducers, hermitian=True, half=half, budget=budget)
