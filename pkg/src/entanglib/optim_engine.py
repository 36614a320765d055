"""Certified spectral and nuclear norm brackets.

Spectral norms are bracketed by a covering-net maximum G and G/(1 - t delta)
(t the regime threshold, delta the net radius); polish only raises the
lower end.  Nuclear norms come from a linear program over rank-one columns
solved by column generation.  Its value is an explicit decomposition, so it
is an upper bound; the lower bound is the optimal dual functional, rescaled
by the certified supremum of that functional over the sphere.
"""

from dataclasses import dataclass, field
from math import sqrt

import numpy as np

from .antisym_tensors import WedgeTensor
from .errors import ArgumentError, BudgetError, DimensionError, LPError, ParameterError
from .grid_eval import TopK, scan_hermitian, scan_holomorphic
from .hermitian_tensors import DensityTensor, HermitianTensor, as_hermitian, bisym_coefficients
from .linalg import eigh_desc
from .lp import LPProblem, OPTIMAL, solve_lp
from .polish import als_dense, als_hermitian, herm_value, polish_hermitian_sym, polish_holomorphic
from .product_norms import (dense_product_scan, factor_net, factor_vectors, herm_product_scan,
                            matrix_singular_values, reduced_top_vector, sigma1_bracket, unravel)
from .config import default_budget
from .sphere_covering import CoveringGrid, bloch_net_for_radius, check_budget, choose_m, regime_threshold
from .sym_poly import BiSymTensor, SymTensor, monomial_table, monomials, sym_dim
from .tensor_core import DenseTensor, as_tensor

PRICE_TOL = 1e-9
ELASTIC_COST = 1e4
PRICING_POINTS = 30000
POLISH_ROUNDS = 60
FINE_POINTS = 400_000
FINE_QUBIT_RADIUS = 0.005
PRICE_ALS_ITERS = 60
SMOOTHING = 0.5
NETS = ("auto", "full", "phase", "bloch", "orthant")


def _vec_json(v):
    return [[float(z.real), float(z.imag)] for z in np.asarray(v, dtype=np.complex128).ravel()]


@dataclass
class Decomposition:
    """Signed rank-one terms; ``vector`` is one vector (symmetric kinds) or a list of factors."""

    terms: list
    target_kind: str
    d: int = 1

    @property
    def total(self):
        return float(sum(w for w, _, _ in self.terms))

    def __len__(self):
        return len(self.terms)

    def all_positive(self):
        return all(s > 0 for _, _, s in self.terms)

    def positive_part(self):
        """The same decomposition with negative terms dropped."""
        return Decomposition([t for t in self.terms if t[2] > 0], self.target_kind, self.d)

    def symmetric_coefficients(self, n, d=None):
        """Unweighted coefficients of sum s w v^{(x)d} (symmetric kinds)."""
        d = self.d if d is None else d
        K = sym_dim(n, d)
        out = np.zeros(K, dtype=np.complex128)
        for w, v, s in self.terms:
            out += s * w * monomials(np.asarray(v), d)
        return out

    def dicke_matrix(self, n):
        _, c, _ = monomial_table(self.d, n)
        out = np.zeros((len(c), len(c)), dtype=np.complex128)
        for w, v, s in self.terms:
            p = np.sqrt(c) * monomials(np.asarray(v), self.d)
            out += s * w * np.outer(p, p.conj())
        return out

    def product_tensor(self):
        out = None
        for w, fs, s in self.terms:
            t = fs[0]
            for f in fs[1:]:
                t = np.multiply.outer(t, f)
            out = s * w * t if out is None else out + s * w * t
        return out

    def product_density(self):
        out = None
        for w, fs, s in self.terms:
            x = fs[0]
            for f in fs[1:]:
                x = np.kron(x, f)
            t = s * w * np.outer(x, x.conj())
            out = t if out is None else out + t
        return out

    def to_json(self):
        items = []
        for w, v, s in self.terms:
            item = {"weight": float(w), "sign": int(s)}
            if isinstance(v, (list, tuple)):
                item["factors"] = [_vec_json(f) for f in v]
            else:
                item["vector"] = _vec_json(v)
            items.append(item)
        return items


@dataclass
class NormEstimate:
    lower: float
    upper: float
    witness: list = None
    epsilon_used: float = None
    m_used: int = None
    norm: str = "spectral"
    net: str = None
    grid_value: float = None
    certified: bool = True
    decomposition: Decomposition = None
    notes: list = field(default_factory=list)

    @property
    def width(self):
        if self.lower <= 0:
            return float("inf") if self.upper > 0 else 0.0
        return self.upper / self.lower - 1.0

    def contains(self, value, slack=1e-9):
        return self.lower - slack <= value <= self.upper + slack

    def to_json(self):
        out = {
            "norm": self.norm,
            "lower": float(self.lower),
            "upper": float(self.upper),
            "epsilon": self.epsilon_used,
            "m": self.m_used,
            "net": self.net,
            "certified": bool(self.certified),
            "witness": [_vec_json(w) for w in (self.witness or [])],
        }
        if self.decomposition is not None:
            out["decomposition"] = self.decomposition.to_json()
        if self.notes:
            out["notes"] = list(self.notes)
        return out


# ----------------------------------------------------------------------
# nets
# ----------------------------------------------------------------------
def _even_in_each(S):
    J = S.exponents
    nz = np.abs(S.coeffs) > 0
    return bool(np.all(J[nz] % 2 == 0))


def resolve_net(n, field, m, net="auto", budget=None, even=False, half=True):
    """Pick a net of resolution m (covering radius <= 1/m)."""
    if net not in NETS:
        raise ArgumentError(f"net must be one of {NETS}")
    budget = default_budget() if budget is None else int(budget)
    if net != "auto":
        if net == "bloch":
            return bloch_net_for_radius(1.0 / m, m)
        return CoveringGrid(m, n, field, net)
    scale = 2 if half else 1
    g = CoveringGrid(m, n, field, "full")
    if g.count <= budget * scale:
        return g
    if field == "real":
        if even:
            g = CoveringGrid(m, n, "real", "orthant")
            if g.count <= budget:
                return g
        raise BudgetError(f"real grid C({m},{n}) has {CoveringGrid(m, n, field).count} points, above the budget of {budget}")
    if n == 2:
        g = bloch_net_for_radius(1.0 / m, m)
        if g.count <= budget:
            return g
    g = CoveringGrid(m, n, "complex", "phase")
    if g.count <= budget * scale:
        return g
    raise BudgetError(f"complex grid for m={m}, n={n} has at least {g.count} points, above the budget of {budget}")


def _uses_half(grid):
    return grid.kind in ("full", "phase")


def _certify_factor(thr, grid):
    delta = grid.radius
    if thr * delta >= 1.0:
        raise ParameterError(f"net too coarse: need m > {thr:g} (covering radius below 1/{thr:g}) "
                             f"for this regime, got radius {delta:.4g}")
    return 1.0 - thr * delta


def _pricing_grid(n, field, even=False):
    kind = "full"
    if field == "complex" and n == 2:
        return bloch_net_for_radius(0.05)
    if field == "complex":
        kind = "phase"
    elif even:
        kind = "orthant"
    m = 1
    while CoveringGrid(m + 1, n, field, kind).count <= PRICING_POINTS:
        m += 1
    return CoveringGrid(m, n, field, kind)


# ----------------------------------------------------------------------
# spectral norms of symmetric tensors (Banach restriction)
# ----------------------------------------------------------------------
def _as_sym(T):
    if isinstance(T, SymTensor):
        return T
    raise ArgumentError(f"expected a SymTensor, got {type(T).__name__}")


def spectral_norm_grid(T, grid, budget=None, top=1, regime=None):
    """Grid bracket [G, G/(1 - t delta)] without polish.

    T may be a SymTensor (max |f(x)|), a BiSymTensor in pair form
    (max |F(x, y)|, threshold 2d) or a bi-symmetric HermitianTensor
    (max |u^dagger B u|, u = x^{(x)d}).
    """
    if isinstance(T, SymTensor):
        return _sym_spectral_grid(T, grid, budget, top)
    if isinstance(T, BiSymTensor):
        return _pair_spectral_grid(T, grid, budget)
    if isinstance(T, (HermitianTensor, DensityTensor)):
        return bspec_grid(T, grid, budget=budget, regime=regime or "auto")
    raise ArgumentError(f"spectral_norm_grid does not handle {type(T).__name__}")


def _sym_spectral_grid(S, grid, budget=None, top=1):
    if grid.n != S.n:
        raise DimensionError(f"grid dimension {grid.n} does not match n={S.n}")
    if grid.kind == "orthant" and not _even_in_each(S):
        raise ArgumentError("the orthant net needs a polynomial even in every variable")
    factor = _certify_factor(regime_threshold(S.d, "symmetric"), grid)
    if S.hilbert_norm() == 0:
        return NormEstimate(0.0, 0.0, [np.eye(S.n)[0]], None, grid.m, "spectral", grid.kind, 0.0)
    red = TopK("abs", top)
    scan_holomorphic(grid, S.n, S.d, S.weighted(), [red], half=_uses_half(grid), budget=budget)
    G, idx, _ = red.best
    x = grid.vector_at(idx)
    est = NormEstimate(G, G / factor, [x], None, grid.m, "spectral", grid.kind, G)
    est._candidates = [grid.vector_at(i) for i in red.index]
    return est


def _pair_spectral_grid(B, grid, budget=None):
    """max over x, y in the net of |sum c_j c_l F_jl x^j y^l| (pair regime)."""
    factor = _certify_factor(regime_threshold(B.d, "pair"), grid)
    check_budget(grid.count**2, budget)
    X = grid.all_vectors()
    c = B.multinomials
    P = monomials(X, B.d) * c
    Q = P @ B.F.T
    best, bi, bj = -1.0, 0, 0
    step = max(1, (1 << 22) // max(1, len(X)))
    for a in range(0, len(X), step):
        V = np.abs(Q[a:a + step] @ P.T)
        k = int(np.argmax(V))
        r, s = divmod(k, V.shape[1])
        if V[r, s] > best:
            best, bi, bj = float(V[r, s]), a + r, s
    return NormEstimate(best, best / factor, [X[bi], X[bj]], None, grid.m, "spectral", grid.kind, best)


def spectral_polish(T, start, max_iters=500):
    """Monotone local ascent from ``start``; returns (value, vector or factor list)."""
    if isinstance(T, SymTensor):
        real = T.field == "real" and not np.iscomplexobj(start)
        return polish_holomorphic(T.weighted(), T.n, T.d, start, real=real, max_iters=max_iters)
    if isinstance(T, (HermitianTensor, DensityTensor)):
        B = as_hermitian(T)
        if not isinstance(start, (list, tuple)):
            Bs = bisym_coefficients(B)
            c = Bs.multinomials
            G = c[:, None] * Bs.F * c[None, :]
            val, v, _ = polish_hermitian_sym(G, Bs.n, Bs.d, start, max_iters=max_iters)
            return val, v
        val, xs, _ = als_hermitian(B.matrix, B.shape, start, max_iters=max_iters)
        return val, xs
    if isinstance(T, WedgeTensor):
        T = T.dense
    if isinstance(T, (DenseTensor, np.ndarray)):
        X = as_tensor(T)
        val, xs = als_dense(X.data, start, max_iters=max_iters)
        return val, xs
    raise ArgumentError(f"spectral_polish does not handle {type(T).__name__}")


def _field_of(T, field):
    if field is not None:
        if field not in ("real", "complex"):
            raise ArgumentError("field must be 'real' or 'complex'")
        return field
    return getattr(T, "field", "complex")


def spectral_norm(T, epsilon=0.3, m=None, net="auto", budget=None, field=None, polish=True, **kw):
    """Certified spectral bracket with width <= epsilon (unless m overrides), lower end polished."""
    if not 0 < float(epsilon) < 1:
        raise ParameterError(f"epsilon must lie in (0, 1), got {epsilon}")
    if isinstance(T, SymTensor):
        fld = _field_of(T, field)
        d = T.d
        m = choose_m(epsilon, d, "symmetric") if m is None else int(m)
        if m <= d:
            raise ParameterError(f"m must exceed d = {d} in the symmetric regime (got m={m})")
        grid = resolve_net(T.n, fld, m, net, budget, even=fld == "real" and _even_in_each(T))
        est = _sym_spectral_grid(T.with_field(fld) if fld != T.field and fld == "complex" else T, grid, budget, top=4)
        est.epsilon_used = float(epsilon)
        if polish and est.grid_value > 0:
            best, bx = est.lower, est.witness[0]
            for x in est._candidates:
                val, v = polish_holomorphic(T.weighted(), T.n, T.d, x, real=fld == "real")
                if val > best:
                    best, bx = val, v
            est.lower, est.witness = min(best, est.upper), [bx]
        return est
    if isinstance(T, BiSymTensor):
        m = choose_m(epsilon, T.d, "pair") if m is None else int(m)
        grid = resolve_net(T.n, "complex", m, net if net != "auto" else "bloch" if T.n == 2 else "phase", budget)
        est = _pair_spectral_grid(T, grid, budget)
        est.epsilon_used = float(epsilon)
        return est
    if isinstance(T, (HermitianTensor, DensityTensor)):
        B = as_hermitian(T)
        kind = kw.pop("norm", None)
        if kind is None:
            kind = "bspec" if B.structure in ("bisymmetric", "realsymmetric") else "spec"
        if kind == "bspec":
            return bspec(B, epsilon, m=m, net=net, budget=budget, **kw)
        return hermitian_spectral(B, epsilon, budget=budget, **kw)
    if isinstance(T, WedgeTensor):
        T = T.dense
    if isinstance(T, (DenseTensor, np.ndarray)):
        X = as_tensor(T)
        if X.d == 1:
            v = X.norm()
            return NormEstimate(v, v, [X.data / v if v else X.data], float(epsilon), None, "spectral", "exact", v)
        if X.d == 2:
            return matrix_spectral(X, epsilon)
        return product_spectral(X, epsilon, budget=budget, field=_field_of(X, field) if field else "complex", **kw)
    raise ArgumentError(f"spectral_norm does not handle {type(T).__name__}")


# ----------------------------------------------------------------------
# matrices
# ----------------------------------------------------------------------
def matrix_norms(T):
    """(spectral, nuclear, singular values) of a d = 2 tensor via the Gram eigenproblem."""
    from .product_norms import matrix_singular_values

    X = as_tensor(T) if not isinstance(T, np.ndarray) else DenseTensor(T)
    if X.d != 2:
        raise DimensionError(f"matrix_norms needs d = 2, got d = {X.d}")
    s, _, _, _ = matrix_singular_values(X.data)
    return float(s[0]), float(np.sum(s)), s


def matrix_spectral(T, epsilon=None):
    X = as_tensor(T)
    lower, upper, left, right = sigma1_bracket(X.data)
    # witness in evaluation convention: |sum T_ab x_a y_b| = lower
    val, xs = als_dense(X.data, [np.conj(left), right])
    return NormEstimate(max(lower, val), max(upper, val), xs, epsilon, None, "spectral", "exact", lower,
                        notes=["sigma_1 from Gram eigenvalues with backward-error slack"])


def matrix_nuclear_lp(T, epsilon=0.3, max_rounds=1000):
    """Nuclear bracket of a matrix by column generation over rank-one columns x (x) y.

    Pricing is exact: for the dual matrix U the best column is its top singular
    pair, so no net is needed.  The lower end divides y . b by the certified
    upper bound on sigma_1(U); iteration stops once upper <= (1 + epsilon) lower.
    """
    gap = float(epsilon)
    X = as_tensor(T)
    if X.d != 2:
        raise DimensionError("matrix_nuclear_lp needs d = 2")
    M = np.asarray(X.data, dtype=np.complex128)
    p, q = M.shape
    b = np.concatenate([M.real.ravel(), M.imag.ravel()])
    if np.linalg.norm(b) == 0:
        return NormEstimate(0.0, 0.0, [], epsilon, None, "nuclear", "exact", 0.0), Decomposition([], "product", 2)

    def col(fs):
        z = np.outer(fs[0], fs[1]).ravel()
        return np.concatenate([z.real, z.imag])

    def pairs(y):
        """Singular pairs (s, [x, y]) of the dual matrix with x^T U y = s, plus a certified sigma_1 bound."""
        U = (y[: p * q] - 1j * y[p * q:]).reshape(p, q)
        s, _, _, V = matrix_singular_values(U)
        _, up, _, _ = sigma1_bracket(U)
        out = []
        for i in range(len(s)):
            if s[i] <= 1e-12 * s[0]:
                break
            if q <= p:
                right = V[:, i]
                left = U @ right
            else:
                left = V[:, i]
                right = U.conj().T @ left
            nl, nr = np.linalg.norm(left), np.linalg.norm(right)
            if nl > 0 and nr > 0:
                out.append((float(s[i]), [np.conj(left) / nl, right / nr]))
        return out, up

    cg = _ColumnGeneration(b, col, None, max_rounds=max_rounds)
    # standard-basis columns span the target, so the master is feasible from the start
    cg.seed([(1.0, [ph * np.eye(p)[a], np.eye(q)[c] + 0j]) for ph in (1.0, 1j) for a in range(p) for c in range(q)])
    lower, best = 0.0, None
    while True:
        cg.rounds += 1
        sol = cg._solve()
        y = sol.duals
        cands, sup = pairs(y)
        if sup > 0 and float(y @ b) / sup > lower:
            lower, best = float(y @ b) / sup, y / sup
        if cg.value <= (1.0 + gap) * lower:
            break
        # price at a point between the master dual and the best feasible dual (smoothing)
        added = cg._add_violators(cands)
        if best is not None:
            added |= cg._add_violators(pairs(SMOOTHING * best + (1 - SMOOTHING) * y)[0])
        if not added:
            break
        if cg.rounds >= max_rounds:
            raise LPError(f"column generation did not converge in {max_rounds} rounds")
    dec = cg.decomposition("product", 2)
    est = NormEstimate(min(lower, cg.value), cg.value, None, epsilon, None, "nuclear", "exact", None, decomposition=dec)
    est.notes.append(f"{cg.rounds} master solves, {cg.cols.shape[1]} columns; exact singular-pair pricing")
    return est, dec


def matrix_nuclear(T, epsilon=None):
    """Nuclear norm of a matrix from its singular value decomposition.

    Upper end: the weights of the rank-one expansion plus sqrt(rank) times the
    Frobenius residual of that expansion.  Lower end: <U, T> / sigma_1(U) for
    the polar factor U, with sigma_1(U) bounded from above.
    """
    X = as_tensor(T)
    if X.d != 2:
        raise DimensionError("matrix_nuclear needs d = 2")
    M = X.data
    if X.norm() == 0:
        return NormEstimate(0.0, 0.0, [], epsilon, None, "nuclear", "exact", 0.0), Decomposition([], "product", 2)
    from .product_norms import matrix_singular_values

    s, _, _, V = matrix_singular_values(M)
    keep = s > s[0] * 1e-7
    s, V = s[keep], V[:, keep]
    if M.shape[1] <= M.shape[0]:
        Vh = V.conj().T
        Uu = (M @ V) / s
    else:
        Uu = V
        Vh = (V.conj().T @ M) / s[:, None]
    terms = [(float(w), [Uu[:, i], Vh[i]], 1) for i, w in enumerate(s)]
    dec = Decomposition(terms, "product", 2)
    resid = np.linalg.norm(M - dec.product_tensor())
    upper = float(np.sum(s)) + sqrt(min(M.shape)) * resid
    P = Uu @ Vh
    _, up, _, _ = sigma1_bracket(P)
    lower = float(np.real(np.vdot(P, M))) / up
    est = NormEstimate(min(lower, upper), upper, None, epsilon, None, "nuclear", "exact", None, decomposition=dec)
    est.notes.append("singular value expansion; dual certificate from the polar factor")
    return est, dec


# ----------------------------------------------------------------------
# dense tensors: product-state grids
# ----------------------------------------------------------------------
def product_spectral(T, epsilon=0.3, budget=None, field="complex", deltas=None, polish=True):
    """Spectral bracket of a dense d >= 3 tensor: nets on all modes but the two largest."""
    X = as_tensor(T)
    d = X.d
    if d < 3:
        return spectral_norm(X, epsilon)
    order = sorted(range(d), key=lambda k: (X.shape[k], k))
    grid_modes, exact = order[: d - 2], order[d - 2:]
    perm = grid_modes + exact
    Tp = np.transpose(X.data, perm)
    q = len(grid_modes)
    if deltas is None:
        delta = float(epsilon) / (1.0 + float(epsilon)) / q
        nets = [factor_net(X.shape[k], delta, field) for k in grid_modes]
    else:
        nets = [factor_net(X.shape[k], dl, field) for k, dl in zip(grid_modes, deltas)]
    radii = [g.radius if g is not None else 0.0 for g in nets]
    total = sum(radii)
    if total >= 1:
        raise ParameterError("sum of factor radii must be below 1")
    vecs = [factor_vectors(g, budget) for g in nets]
    red, sizes = dense_product_scan(Tp, vecs, top=4, budget=budget)
    G = red.best[0]
    best, bxs = -1.0, None
    for idx in red.index:
        digits = unravel(int(idx), sizes)
        fs = [vecs[k][digits[k]] for k in range(q)]
        M = Tp
        for f in fs:
            M = np.tensordot(f, M, axes=([0], [0]))
        lo, up, left, right = sigma1_bracket(M)
        start = fs + [np.conj(left), np.conj(right)]
        val, xs = als_dense(Tp, start) if polish else (lo, start)
        if val > best:
            best, bxs = val, xs
    inv = np.argsort(perm)
    witness = [bxs[i] for i in inv]
    upper = G / (1.0 - total)
    est = NormEstimate(min(max(best, G), upper), upper, witness, float(epsilon), None, "spectral",
                       "+".join(g.kind if g else "none" for g in nets), G)
    est.notes.append(f"nets on modes {grid_modes}, radii {[round(r, 6) for r in radii]}; exact sigma_1 on modes {exact}")
    return est


# ----------------------------------------------------------------------
# Hermitian tensors: product-state spectral norm and b-spectral norm
# ----------------------------------------------------------------------
def _op_norm_and_eigs(M):
    w, _ = eigh_desc(M)
    return float(max(abs(w[0]), abs(w[-1]))), float(w[0]), float(w[-1])


def _herm_upper(G, opn, lam_max, lam_min, slack, psd_tol=1e-12):
    """Upper bounds for sup |x^dagger H x| from a grid value G with total radius ``slack``."""
    bounds = [G + 2.0 * opn * slack, opn]
    if lam_min >= -psd_tol:
        bounds.append((sqrt(max(G, 0.0)) + sqrt(max(lam_max, 0.0)) * slack) ** 2)
    if lam_max <= psd_tol:
        bounds.append((sqrt(max(G, 0.0)) + sqrt(max(-lam_min, 0.0)) * slack) ** 2)
    return min(bounds)


def _default_split(shape):
    """Group modes into (smallest mode | rest) for d >= 3 -- a coarser product set."""
    d = len(shape)
    if d <= 2:
        return None
    k = min(range(d), key=lambda i: (shape[i], i))
    rest = [i for i in range(d) if i != k]
    return [[k], rest]


def hermitian_spectral(H, epsilon=0.3, budget=None, split="auto", deltas=None, polish=True):
    """Bracket for max over product states x of |x^dagger H x|.

    Nets run on every mode except the largest, which is solved exactly.  With
    ``split='auto'`` and d >= 3 the modes are first grouped into a bipartite
    split (smallest mode | the rest); product states of the split contain
    those of the full shape, so the upper end stays valid while the lower end
    comes from alternating updates on the full shape.
    """
    B = as_hermitian(H)
    shape = tuple(B.shape)
    d = len(shape)
    opn, lam_max, lam_min = _op_norm_and_eigs(B.matrix)
    if opn == 0:
        return NormEstimate(0.0, 0.0, [np.eye(n)[0] for n in shape], epsilon, None, "spec", "exact", 0.0)
    if d == 1:
        w, V = eigh_desc(B.matrix)
        k = 0 if abs(w[0]) >= abs(w[-1]) else -1
        return NormEstimate(opn, opn, [V[:, k]], epsilon, None, "spec", "exact", opn)
    w, V = eigh_desc(B.matrix)
    k = 0 if abs(w[0]) >= abs(w[-1]) else -1
    rest = np.delete(w, k if k == 0 else len(w) - 1)
    if split == "auto" and deltas is None and np.max(np.abs(rest), initial=0.0) <= 1e-10 * opn:
        # rank one: |x^dagger H x| = |w| |<x, psi>|^2, plus the operator norm of the remainder
        psi = DenseTensor(V[:, k].reshape(shape))
        inner = spectral_norm(psi, epsilon, budget=budget, polish=polish)
        tail = float(np.max(np.abs(rest), initial=0.0))
        lam = abs(float(w[k]))
        est = NormEstimate(lam * inner.lower ** 2, lam * inner.upper ** 2 + tail,
                           [np.conj(f) for f in inner.witness], epsilon, inner.m_used, "spec", inner.net,
                           lam * inner.grid_value ** 2 if inner.grid_value is not None else None)
        est.notes.append("rank one: squared spectral bracket of the eigenvector")
        return est
    groups = _default_split(shape) if split == "auto" else split
    if groups is None:
        groups = [[k] for k in range(d)]
    perm = [k for g in groups for k in g]
    gshape = tuple(int(np.prod([shape[k] for k in g])) for g in groups)
    M = B.matrix.reshape(shape + shape)
    M = np.transpose(M, perm + [d + k for k in perm]).reshape(B.N, B.N)
    D = len(gshape)
    exact = max(range(D), key=lambda i: (gshape[i], -i))
    gmodes = [i for i in range(D) if i != exact]
    delta = float(epsilon) / (1.0 + float(epsilon)) / max(1, len(gmodes)) if deltas is None else None
    nets = [factor_net(gshape[i], delta if deltas is None else deltas[j]) for j, i in enumerate(gmodes)]
    vecs = [factor_vectors(g, budget) for g in nets]
    slack = sum(g.radius for g in nets if g is not None)
    red, sizes = herm_product_scan(M, gshape, gmodes, exact, vecs, top=4, budget=budget)
    G = red.best[0]
    upper = _herm_upper(G, opn, lam_max, lam_min, slack)
    best, bxs = 0.0, None
    for idx, val in zip(red.index, red.values):
        digits = unravel(int(idx), sizes)
        fs = [vecs[j][digits[j]] for j in range(len(gmodes))]
        sign = 1.0 if val.real >= 0 else -1.0
        xs = reduced_top_vector(M, gshape, gmodes, exact, fs, sign)
        full = _ungroup(xs, groups, shape)
        if polish:
            v, full, _ = als_hermitian(B.matrix, shape, full, sign=sign)
        else:
            v = abs(herm_value(B.matrix, shape, full))
        if v > best:
            best, bxs = v, full
    if best < G * (1 - 1e-12) and len(groups) < d:
        # grouped witnesses need not be product states of the full shape; fall back on ALS from them
        pass
    est = NormEstimate(min(best, upper), upper, bxs, epsilon, None, "spec",
                       "+".join(g.kind if g else "none" for g in nets), G)
    est.notes.append(f"split {groups}; nets on groups {gmodes}, exact eigenproblem on group {exact}")
    return est


def _ungroup(xs, groups, shape):
    """Turn group vectors into per-mode factors (best rank-one factors of each group vector)."""
    out = [None] * len(shape)
    for g, x in zip(groups, xs):
        if len(g) == 1:
            out[g[0]] = np.asarray(x, dtype=np.complex128)
            continue
        t = np.asarray(x).reshape([shape[k] for k in g])
        start = [np.linalg.svd(t.reshape(shape[g[0]], -1))[0][:, 0].conj()]
        start += [np.ones(shape[k]) / sqrt(shape[k]) for k in g[1:]]
        _, fs = als_dense(t, start)
        for k, f in zip(g, fs):
            out[k] = np.conj(f)
    return out


def _bisym_dicke(B):
    Bs = bisym_coefficients(B)
    return Bs, Bs.dicke_matrix()


def bspec_grid(B, grid, budget=None, regime="auto"):
    """Grid bracket for ||B||_bspec = max |u^dagger B u|, u = x^{(x)d}.

    ``regime='relative'`` uses G/(1 - 2 d K^{3/2} delta); 'auto' takes the best
    of that (when valid), the additive Lipschitz bound G + 2 d ||B|| delta,
    the PSD square-root bound and the operator-norm cap.
    """
    B = as_hermitian(B)
    Bs, Hd = _bisym_dicke(B)
    n, d = Bs.n, Bs.d
    c = Bs.multinomials
    Graw = c[:, None] * Bs.F * c[None, :]
    red = TopK("abs", 4)
    scan_hermitian(grid, n, d, Graw, [red], half=_uses_half(grid), budget=budget)
    G, idx, val = red.best
    x = grid.vector_at(idx)
    delta = grid.radius
    opn, lam_max, lam_min = _op_norm_and_eigs(Hd)
    thr = regime_threshold(d, "bihermitian", n)
    bounds = []
    if thr * delta < 1:
        bounds.append(G / (1 - thr * delta))
    if regime == "relative":
        if not bounds:
            raise ParameterError(f"net too coarse for the bi-Hermitian regime: need m > {thr:.4g}")
    else:
        bounds.append(_herm_upper(G, opn, lam_max, lam_min, d * delta))
    est = NormEstimate(G, min(bounds), [x], None, grid.m, "bspec", grid.kind, G)
    est._candidates = [(grid.vector_at(i), v) for i, v in zip(red.index, red.values)]
    est._graw = Graw
    return est


def bspec(B, epsilon=0.3, m=None, net="auto", budget=None, regime="auto", polish=True):
    """Certified b-spectral bracket of a bi-symmetric Hermitian tensor."""
    B = as_hermitian(B)
    n, d = B.shape[0], B.d
    if m is None:
        # the Lipschitz bounds need d * delta * (scale) <= eps/(1+eps); symmetric threshold d
        m = choose_m(epsilon, 2 * d, "symmetric")
    if net == "auto":
        grid = bloch_net_for_radius(1.0 / m, m) if n == 2 else resolve_net(n, "complex", m, "phase", budget)
    else:
        grid = resolve_net(n, "complex", m, net, budget)
    est = bspec_grid(B, grid, budget, regime)
    est.epsilon_used = float(epsilon)
    est.m_used = m
    if polish:
        Bs = bisym_coefficients(B)
        best, bx = est.lower, est.witness[0]
        for x, val in est._candidates:
            v, xv, _ = polish_hermitian_sym(est._graw, Bs.n, Bs.d, x, sign=1.0 if val.real >= 0 else -1.0)
            if v > best:
                best, bx = v, xv
        est.lower, est.witness = min(best, est.upper), [bx]
    return est


def _bihermitian_sup(G, grid, n, d, opn, lam_max, lam_min):
    """Certified sup of |u^dagger Y u| over u = x^{(x)d} from the net maximum G."""
    sup = _herm_upper(G, opn, lam_max, lam_min, d * grid.radius)
    thr = regime_threshold(d, "bihermitian", n)
    if thr * grid.radius < 1:
        sup = min(sup, G / (1 - thr * grid.radius))
    return sup


def _refined_net(n, field, grid, orthant=False, budget=None):
    """A finer net than ``grid`` of at most FINE_POINTS points, used to re-certify a final dual."""
    cap = min(FINE_POINTS, budget or FINE_POINTS)
    if field == "complex" and n == 2:
        net = bloch_net_for_radius(FINE_QUBIT_RADIUS)
    else:
        kind = "orthant" if orthant else ("phase" if field == "complex" else "full")
        m = grid.m
        while CoveringGrid(m + 1, n, field, kind).count <= cap:
            m += 1
        net = CoveringGrid(m, n, field, kind)
    return net if net.radius < grid.radius and net.count <= cap else None


def _fine_factor_nets(dims, delta, cap):
    """Finest factor nets from a fixed radius ladder whose product has at most ``cap`` points."""
    for k in range(8):
        r = FINE_QUBIT_RADIUS * 2**k
        if r >= delta:
            return None
        if np.prod([_net_size_estimate(n, r) for n in dims]) <= cap:
            return [factor_net(n, r) for n in dims]
    return None


def _net_size_estimate(n, r):
    if n == 1:
        return 1
    if n == 2:
        t = 2.0 * np.arccos(1.0 - r * r / 2.0)
        return 8.0 / (t * t)
    g = factor_net(n, r)
    return g.count


# ----------------------------------------------------------------------
# column generation
# ----------------------------------------------------------------------
class _ColumnGeneration:
    """min sum |weights| s.t. sum (a_w - b_w) col(w) = b, over a growing column set."""

    def __init__(self, b, col, price, certify=None, max_rounds=300, tol=PRICE_TOL):
        self.b = np.asarray(b, dtype=float)
        self.M = self.b.size
        self.col = col
        self.price = price
        self.certify = certify
        self.max_rounds = max_rounds
        self.tol = tol
        self.cols = np.zeros((self.M, 0))
        self.vecs = []
        self.basis = None
        self.sol = None
        self.grid_max = None
        self.rounds = 0

    def add(self, vec):
        g = self.col(vec)
        if self.cols.shape[1]:
            diff = np.min(np.linalg.norm(self.cols - g[:, None], axis=0))
            if diff < 1e-12:
                return False
        self.cols = np.hstack([self.cols, g[:, None]])
        self.vecs.append(vec)
        return True

    def seed(self, cands):
        for _, v in cands:
            self.add(v)

    def _solve(self):
        M, k = self.M, self.cols.shape[1]
        A = np.empty((M, 2 * M + 2 * k))
        A[:, :M] = np.eye(M)
        A[:, M:2 * M] = -np.eye(M)
        A[:, 2 * M::2] = self.cols
        A[:, 2 * M + 1::2] = -self.cols
        cost = np.concatenate([np.full(2 * M, ELASTIC_COST), np.ones(2 * k)])
        sol = solve_lp(LPProblem(cost, A, self.b), basis=self.basis)
        if sol.status != OPTIMAL:
            raise LPError(f"master LP ended with status {sol.status}")
        self.sol, self.basis = sol, sol.basis
        return sol

    def _add_violators(self, cands):
        added = False
        for score, v in cands:
            if score > 1.0 + self.tol:
                added |= self.add(v)
        return added

    def run(self):
        """Alternate master solves with pricing until the certification scan finds no violator.

        After ``POLISH_ROUNDS`` rounds only raw net points are added; there are
        finitely many, so the loop terminates.
        """
        while self.rounds < self.max_rounds:
            self.rounds += 1
            sol = self._solve()
            raw = self.rounds > POLISH_ROUNDS
            if not raw and self._add_violators(self.price(sol.duals)):
                continue
            if self.certify is not None:
                gmax, cands = self.certify(sol.duals, raw)
                self.grid_max = gmax
                if self._add_violators(cands):
                    continue
            break
        else:
            raise LPError(f"column generation did not converge in {self.max_rounds} rounds")
        elastic = float(np.sum(self.sol.x[: 2 * self.M]))
        if elastic > 1e-9 * (1 + np.abs(self.b).sum()):
            raise LPError("grid does not span target: residual elastic weight "
                          f"{elastic:.3e}; use a larger m")
        return self

    @property
    def value(self):
        return float(np.sum(self.sol.x[2 * self.M:]))

    @property
    def duals(self):
        return self.sol.duals

    def dual_lower(self, sup_bound):
        """(y . b) / S where S bounds sup |y . col| over all unit columns."""
        y = self.sol.duals
        yb = float(y @ self.b)
        S = sup_bound(y)
        return max(0.0, yb / S) if S > 0 else 0.0

    def decomposition(self, kind, d, min_weight=1e-14):
        x = self.sol.x[2 * self.M:]
        terms = []
        for j, v in enumerate(self.vecs):
            for s, w in ((1, x[2 * j]), (-1, x[2 * j + 1])):
                if w > min_weight:
                    terms.append((float(w), v, s))
        return Decomposition(terms, kind, d)


# ----------------------------------------------------------------------
# nuclear norms of symmetric tensors
# ----------------------------------------------------------------------
def _sym_rows(coeffs, real):
    return np.asarray(coeffs).real.astype(float) if real else np.concatenate([np.real(coeffs), np.imag(coeffs)])


def nuclear_norm_grid(T, grid, pricing_grid=None, polish=True, budget=None, max_rounds=300, full_grid=False):
    """Nuclear bracket of a symmetric tensor by LP over rank-one columns v^{(x)d}.

    Returns (NormEstimate, Decomposition).  With ``full_grid=True`` the LP
    uses every net point as a column (no polish, cross-validation path).
    """
    S = _as_sym(T)
    if isinstance(T, SymTensor) and S.n != grid.n:
        raise DimensionError("grid dimension does not match the tensor")
    n, d = S.n, S.d
    real = grid.field == "real"
    if real and np.iscomplexobj(S.coeffs) and np.any(np.imag(S.coeffs) != 0):
        raise ArgumentError("complex coefficients need a complex grid")
    factor = _certify_factor(regime_threshold(d, "symmetric"), grid)
    K = sym_dim(n, d)
    b = _sym_rows(S.coeffs, real)
    if np.linalg.norm(b) == 0:
        est = NormEstimate(0.0, 0.0, [], None, grid.m, "nuclear", grid.kind, 0.0)
        return est, Decomposition([], "realsymmetric" if real else "symmetric", d)
    if full_grid:
        return _sym_nuclear_full(S, grid, b, real, factor, budget)
    even = real and _even_in_each(S)
    pg = pricing_grid or (grid if grid.count <= PRICING_POINTS else _pricing_grid(n, grid.field, even and grid.kind == "orthant"))

    def col(v):
        return _sym_rows(monomials(np.asarray(v), d), real)

    def weights(y):
        return y[:K] if real else y[:K] - 1j * y[K:]

    def orient(v):
        if real:
            return np.real(v)
        p = monomials(v, d) @ weights_cache[0]
        return v * np.exp(-1j * np.angle(p) / d)

    weights_cache = [None]

    def candidates(y, g, top, refine=polish, iters=None):
        u = weights(y)
        weights_cache[0] = u
        red = TopK("abs", top)
        scan_holomorphic(g, n, d, u, [red], half=_uses_half(g), budget=budget)
        out = []
        for idx in red.index:
            x = g.vector_at(idx)
            if refine:
                val, x = polish_holomorphic(u, n, d, x, real=real, **({"max_iters": iters} if iters else {}))
            else:
                val = abs(monomials(x, d) @ u)
            out.append((val, orient(x)))
        return red, out

    def price(y):
        return candidates(y, pg, 6, iters=PRICE_ALS_ITERS)[1]

    def certify(y, raw=False):
        red, out = candidates(y, grid, 4, polish and not raw)
        return red.best[0], out

    cg = _ColumnGeneration(b, col, price, certify, max_rounds=max_rounds)
    cg.seed(price(b / np.linalg.norm(b))[:3])
    cg.run()
    G = cg.grid_max
    yb = float(cg.duals @ b)
    lower = max(0.0, yb * factor / G) if G and G > 0 else 0.0
    fine = _refined_net(n, grid.field, grid, even and grid.kind == "orthant", budget)
    if fine is not None and yb > 0:
        red = TopK("abs", 1)
        scan_holomorphic(fine, n, d, weights(cg.duals), [red], half=_uses_half(fine), budget=budget)
        Gf = red.best[0]
        if Gf > 0:
            lower = max(lower, yb * (1.0 - d * fine.radius) / Gf)
    dec = cg.decomposition("realsymmetric" if real else "symmetric", d)
    est = NormEstimate(min(lower, cg.value), cg.value, None, None, grid.m, "nuclear", grid.kind, None)
    est.decomposition = dec
    est.notes.append(f"{cg.rounds} master solves, {cg.cols.shape[1]} columns; dual grid max {G:.12g}")
    return est, dec


def _sym_nuclear_full(S, grid, b, real, factor, budget):
    d = S.d
    check_budget(grid.count, min(budget or default_budget(), 200_000))
    X = grid.all_vectors(dedup=True)
    P = monomials(X, d)
    C = (P.real.T if real else np.vstack([P.real.T, P.imag.T]))
    M, k = C.shape
    A = np.hstack([C, -C])
    sol = solve_lp(LPProblem(np.ones(2 * k), A, b))
    if sol.status != OPTIMAL:
        raise LPError("grid does not span target; use a larger m")
    y = sol.duals
    u = y[: len(P[0])] if real else y[: P.shape[1]] - 1j * y[P.shape[1]:]
    G = float(np.max(np.abs((P @ u).real)))
    lower = max(0.0, float(y @ b) * factor / G) if G > 0 else 0.0
    terms = []
    for j in range(k):
        for s, w in ((1, sol.x[j]), (-1, sol.x[k + j])):
            if w > 1e-14:
                terms.append((float(w), X[j], s))
    dec = Decomposition(terms, "realsymmetric" if real else "symmetric", d)
    est = NormEstimate(min(lower, sol.value), sol.value, None, None, grid.m, "nuclear", grid.kind, None, decomposition=dec)
    est.notes.append(f"full-grid LP over {k} columns")
    return est, dec


def nuclear_norm(T, epsilon=0.3, m=None, net="auto", budget=None, field=None, **kw):
    """Nuclear bracket (and decomposition) for symmetric, bi-symmetric Hermitian or matrix inputs."""
    if not 0 < float(epsilon) < 1:
        raise ParameterError(f"epsilon must lie in (0, 1), got {epsilon}")
    if isinstance(T, SymTensor):
        fld = _field_of(T, field)
        m = choose_m(epsilon, T.d, "symmetric") if m is None else int(m)
        if m <= T.d:
            raise ParameterError(f"m must exceed d = {T.d} in the symmetric regime (got m={m})")
        grid = resolve_net(T.n, fld, m, net, budget, even=fld == "real" and _even_in_each(T))
        est, dec = nuclear_norm_grid(T, grid, budget=budget, **kw)
        est.epsilon_used = float(epsilon)
        return est, dec
    if isinstance(T, (HermitianTensor, DensityTensor)):
        B = as_hermitian(T)
        if B.structure in ("bisymmetric", "realsymmetric") and kw.pop("norm", "bnuc") == "bnuc":
            return bnuc(B, epsilon, m=m, net=net, budget=budget, **kw)
        return product_nuclear(B, epsilon, budget=budget, **kw)
    X = T.dense if isinstance(T, WedgeTensor) else T
    if isinstance(X, (DenseTensor, np.ndarray)):
        X = as_tensor(X)
        if X.d == 2:
            if kw.get("method", "svd") == "lp":
                return matrix_nuclear_lp(X, epsilon)
            return matrix_nuclear(X, epsilon)
        raise ArgumentError("nuclear norms of dense tensors with d >= 3 are only supported for symmetric inputs")
    raise ArgumentError(f"nuclear_norm does not handle {type(T).__name__}")


# ----------------------------------------------------------------------
# Hermitian nuclear norms: b-nuclear (columns x^{(x)d} (x) conj) and product-state nuclear
# ----------------------------------------------------------------------
def herm_to_real(H):
    """Isometric real coordinates of a Hermitian matrix: diag, sqrt2 Re(upper), sqrt2 Im(upper)."""
    H = np.asarray(H)
    iu = np.triu_indices(H.shape[0], 1)
    return np.concatenate([np.real(np.diag(H)), sqrt(2) * H[iu].real, sqrt(2) * H[iu].imag])


def real_to_herm(y, K):
    y = np.asarray(y, dtype=float)
    iu = np.triu_indices(K, 1)
    p = len(iu[0])
    H = np.zeros((K, K), dtype=np.complex128)
    H[np.diag_indices(K)] = y[:K]
    H[iu] = (y[K:K + p] + 1j * y[K + p:]) / sqrt(2)
    H[(iu[1], iu[0])] = np.conj(H[iu])
    return H


def bnuc(B, epsilon=0.3, m=None, net="auto", budget=None, max_rounds=300, witnesses=()):
    """b-nuclear bracket of a bi-symmetric Hermitian tensor (columns x^{(x)d} (x) conj(x)^{(x)d}).

    Rows are the K^2 real coordinates of the Dicke matrix (K = C(n+d-1, d)).
    The lower end is the best of: the LP dual rescaled by a certified bound
    on its supremum, the trace, and any extra ``witnesses`` given as
    (Hermitian Dicke matrix, certified sup) pairs.
    """
    B = as_hermitian(B)
    Bs, Hd = _bisym_dicke(B)
    n, d = Bs.n, Bs.d
    K = sym_dim(n, d)
    _, c, _ = monomial_table(d, n)
    sc = np.sqrt(c)
    b = herm_to_real(Hd)
    if np.linalg.norm(b) == 0:
        return NormEstimate(0.0, 0.0, [], epsilon, m, "bnuc", None, 0.0), Decomposition([], "bihermitian", d)
    m = choose_m(epsilon, 2 * d, "symmetric") if m is None else int(m)
    if net == "auto":
        grid = bloch_net_for_radius(1.0 / m, m) if n == 2 else resolve_net(n, "complex", m, "phase", budget)
    else:
        grid = resolve_net(n, "complex", m, net, budget)
    pg = grid if grid.count <= PRICING_POINTS else _pricing_grid(n, "complex")

    def col(v):
        p = sc * monomials(np.asarray(v), d)
        return herm_to_real(np.outer(p, p.conj()))

    def graw(y):
        Y = real_to_herm(y, K)
        return sc[:, None] * Y * sc[None, :]

    def candidates(y, g, top, refine=True):
        G = graw(y)
        red = TopK("abs", top)
        scan_hermitian(g, n, d, G, [red], half=_uses_half(g), budget=budget)
        out = []
        for idx, val in zip(red.index, red.values):
            x = g.vector_at(idx)
            if refine:
                v, x, _ = polish_hermitian_sym(G, n, d, x, sign=1.0 if val.real >= 0 else -1.0)
            else:
                v = abs(val)
            out.append((v, x))
        return red, out

    def price(y):
        return candidates(y, pg, 6)[1]

    def certify(y, raw=False):
        red, out = candidates(y, grid, 4, not raw)
        return red.best[0], out

    cg = _ColumnGeneration(b, col, price, certify, max_rounds=max_rounds)
    cg.seed(price(b / np.linalg.norm(b))[:3])
    cg.run()
    Y = real_to_herm(cg.duals, K)
    opn, lam_max, lam_min = _op_norm_and_eigs(Y)
    Gy = cg.grid_max
    sup = _bihermitian_sup(Gy, grid, n, d, opn, lam_max, lam_min)
    fine = _refined_net(n, "complex", grid, False, budget)
    if fine is not None:
        red = TopK("abs", 1)
        scan_hermitian(fine, n, d, graw(cg.duals), [red], half=_uses_half(fine), budget=budget)
        sup = min(sup, _bihermitian_sup(red.best[0], fine, n, d, opn, lam_max, lam_min))
    lower = float(cg.duals @ b) / sup if sup > 0 else 0.0
    lower = max(lower, abs(float(np.trace(Hd).real)))
    for W, wsup in witnesses:
        if wsup > 0:
            lower = max(lower, float(np.real(np.vdot(W, Hd))) / wsup)
    dec = cg.decomposition("bihermitian", d)
    est = NormEstimate(min(lower, cg.value), cg.value, None, float(epsilon), m, "bnuc", grid.kind, None, decomposition=dec)
    est.notes.append(f"{cg.rounds} master solves, {cg.cols.shape[1]} columns; dual grid max {Gy:.12g}, certified sup {sup:.12g}")
    est._dual = Y
    return est, dec


def product_nuclear(R, epsilon=0.3, budget=None, max_rounds=400, split=None):
    """Nuclear bracket of a Hermitian tensor over product pure densities (x1 (x) ... (x) xd)(...)^dagger."""
    B = as_hermitian(R)
    shape = tuple(B.shape)
    d, N = len(shape), B.N
    b = herm_to_real(B.matrix)
    if np.linalg.norm(b) == 0:
        return NormEstimate(0.0, 0.0, [], epsilon, None, "nuc", None, 0.0), Decomposition([], "hermitian_product", d)
    exact = max(range(d), key=lambda i: (shape[i], -i))
    gmodes = [i for i in range(d) if i != exact]
    delta = float(epsilon) / (1.0 + float(epsilon)) / max(1, len(gmodes))
    nets = [factor_net(shape[i], delta) for i in gmodes]
    pnets = [factor_net(shape[i], max(delta, 0.25)) for i in gmodes]
    vecs = [factor_vectors(g, budget) for g in nets]
    pvecs = [factor_vectors(g, budget) for g in pnets]
    slack = sum(g.radius for g in nets if g is not None)

    def kron(fs):
        x = fs[0]
        for f in fs[1:]:
            x = np.kron(x, f)
        return x

    def col(fs):
        x = kron(fs)
        return herm_to_real(np.outer(x, x.conj()))

    def candidates(y, vs, top, refine=True):
        Y = real_to_herm(y, N)
        red, sizes = herm_product_scan(Y, shape, gmodes, exact, vs, top=top, budget=budget)
        out = []
        for idx, val in zip(red.index, red.values):
            digits = unravel(int(idx), sizes)
            fs = [vs[j][digits[j]] for j in range(len(gmodes))]
            sign = 1.0 if val.real >= 0 else -1.0
            xs = reduced_top_vector(Y, shape, gmodes, exact, fs, sign)
            if refine:
                v, xs, _ = als_hermitian(Y, shape, xs, sign=sign, max_iters=PRICE_ALS_ITERS)
            else:
                v = abs(val)
            out.append((v, xs))
        return red, out

    def price(y):
        return candidates(y, pvecs, 6)[1]

    def certify(y, raw=False):
        red, out = candidates(y, vecs, 4, not raw)
        return red.best[0], out

    cg = _ColumnGeneration(b, col, price, certify, max_rounds=max_rounds)
    cg.seed(price(b / np.linalg.norm(b))[:3])
    cg.run()
    Y = real_to_herm(cg.duals, N)
    opn, lam_max, lam_min = _op_norm_and_eigs(Y)
    sup = _herm_upper(cg.grid_max, opn, lam_max, lam_min, slack)
    fnets = _fine_factor_nets([shape[i] for i in gmodes], delta, min(FINE_POINTS, budget or FINE_POINTS))
    if fnets is not None:
        fvecs = [factor_vectors(g, budget) for g in fnets]
        red, _ = herm_product_scan(Y, shape, gmodes, exact, fvecs, top=1, budget=budget)
        fslack = sum(g.radius for g in fnets if g is not None)
        sup = min(sup, _herm_upper(red.best[0], opn, lam_max, lam_min, fslack))
    lower = float(cg.duals @ b) / sup if sup > 0 else 0.0
    lower = max(lower, abs(float(np.trace(B.matrix).real)))
    dec = cg.decomposition("hermitian_product", d)
    est = NormEstimate(min(lower, cg.value), cg.value, None, float(epsilon), None, "nuc",
                       "+".join(g.kind if g else "none" for g in nets), None, decomposition=dec)
    est.notes.append(f"{cg.rounds} master solves, {cg.cols.shape[1]} columns; dual grid max {cg.grid_max:.12g}, certified sup {sup:.12g}")
    est._dual = Y
    est._sup = sup
    return est, dec
