"""Explicit 1/m-nets of unit spheres.

The basic net C(m, R) consists of the normalized nonzero integer points
a = (h_1, ..., h_R), |h_i| <= R m (equivalently a_i = h_i/(R m) in [-1, 1]).
It has (2Rm + 1)^R - 1 raw points and covering radius 1/m.  Raw points
are enumerated as an odometer over h-coordinates with the last coordinate
fastest; raw index ``c = ((2Rm+1)^R - 1)/2`` is the origin and is skipped.

Vectors in F^n are obtained from the lattice as follows (``kind``):

* ``full``  : real field uses C(m, n); complex field uses C(m, 2n) with
  interleaved (re, im) coordinates.
* ``phase`` : complex field, C(m, 2n - 1) with the first coordinate real.
  Covers every unit vector up to a global phase within 1/m, so it is only
  valid for objectives invariant under x -> e^{it} x.
* ``orthant``: real field, nonnegative coordinates only (lattice 0..nm);
  covers the nonnegative orthant within 1/m, so it is only valid for
  objectives even in every coordinate.
* ``bloch`` : complex field with n = 2; C(m, 3) on the Bloch sphere mapped
  to C^2.  Valid for phase-invariant objectives; the covering radius in
  C^2 (minimised over phases) is sqrt(2 - 2 sqrt(1 - 1/(4 m^2))).
"""

from fractions import Fraction
from math import ceil, comb, sqrt

import numpy as np

from .config import default_budget
from .errors import ArgumentError, BudgetError, ParameterError

KINDS = ("full", "phase", "bloch", "orthant")


class CoveringGrid:
    """A covering net of the unit sphere of F^n, enumerated lazily."""

    def __init__(self, m, n, field="complex", kind="full"):
        m, n = int(m), int(n)
        if m < 1 or n < 1:
            raise ArgumentError("need m >= 1 and n >= 1")
        if field not in ("real", "complex"):
            raise ArgumentError("field must be 'real' or 'complex'")
        if kind not in KINDS:
            raise ArgumentError(f"kind must be one of {KINDS}")
        if field == "real" and kind not in ("full", "orthant"):
            raise ArgumentError("phase reduction only applies to complex grids")
        if kind == "orthant" and field != "real":
            raise ArgumentError("the orthant net is only defined for real grids")
        if kind == "bloch" and n != 2:
            raise ArgumentError("the Bloch net is only defined for n = 2")
        self.m, self.n, self.field, self.kind = m, n, field, kind
        if kind == "bloch":
            self.R = 3
        elif field == "real":
            self.R = n
        elif kind == "phase":
            self.R = 2 * n - 1
        else:
            self.R = 2 * n
        self.half = self.R * m
        self.lo = 0 if kind == "orthant" else -self.half
        self.L = self.half - self.lo + 1
        self.raw_total = self.L ** self.R
        self.center = 0 if kind == "orthant" else (self.raw_total - 1) // 2

    def __repr__(self):
        return f"CoveringGrid(m={self.m}, n={self.n}, field={self.field!r}, kind={self.kind!r})"

    @property
    def count(self):
        """Number of raw nonzero lattice points, (2Rm+1)^R - 1 ((Rm+1)^R - 1 for the orthant)."""
        return self.raw_total - 1

    @property
    def radius(self):
        if self.kind == "bloch":
            return sqrt(max(2.0 - 2.0 * sqrt(1.0 - 1.0 / (4.0 * self.m**2)), 0.0))
        return 1.0 / self.m

    @property
    def phase_invariant_only(self):
        return self.kind != "full"

    def describe(self):
        return {"m": self.m, "n": self.n, "field": self.field, "net": self.kind,
                "points": self.count, "radius": self.radius}

    # enumeration ------------------------------------------------------
    def lattice(self, start, stop):
        """Integer lattice points for raw indices [start, stop) as an int array (k, R)."""
        idx = np.arange(start, stop, dtype=np.int64)
        digits = np.unravel_index(idx, (self.L,) * self.R)
        return np.stack(digits, axis=1) + self.lo

    def to_vectors(self, a):
        """Map integer lattice points (k, R) to unit vectors in F^n; zero rows map to zero."""
        a = np.asarray(a, dtype=float)
        nrm = np.sqrt(np.sum(a * a, axis=1))
        safe = np.where(nrm > 0, nrm, 1.0)
        if self.kind == "bloch":
            b = a / safe[:, None]
            bx, by, bz = b[:, 0], b[:, 1], b[:, 2]
            s = np.sqrt(np.maximum(2.0 * (1.0 + bz), 0.0))
            south = s < 1e-12
            s_safe = np.where(south, 1.0, s)
            x0 = np.where(south, 0.0, (1.0 + bz) / s_safe)
            x1 = np.where(south, 1.0, (bx + 1j * by) / s_safe)
            out = np.stack([x0 + 0j, x1], axis=1)
            out[nrm == 0] = 0
            return out
        if self.field == "real":
            return a / safe[:, None]
        if self.kind == "phase":
            out = np.empty((a.shape[0], self.n), dtype=np.complex128)
            out[:, 0] = a[:, 0]
            out[:, 1:] = a[:, 1::2] + 1j * a[:, 2::2]
        else:
            out = a[:, 0::2] + 1j * a[:, 1::2]
        return out / safe[:, None]

    def points(self, start=0, stop=None):
        """(raw indices, unit vectors) for the nonzero points in [start, stop)."""
        stop = self.raw_total if stop is None else min(stop, self.raw_total)
        idx = np.arange(start, stop, dtype=np.int64)
        idx = idx[idx != self.center]
        a = np.stack(np.unravel_index(idx, (self.L,) * self.R), axis=1) + self.lo
        return idx, self.to_vectors(a)

    def vector_at(self, index):
        return self.points(int(index), int(index) + 1)[1][0]

    def all_vectors(self, budget=None, dedup=False):
        check_budget(self.count, budget)
        _, X = self.points()
        if dedup:
            X = dedup_vectors(X)
        return X

    def partition(self, k, start=0, stop=None):
        """k disjoint contiguous raw-index ranges covering [start, stop)."""
        stop = self.raw_total if stop is None else stop
        edges = np.linspace(start, stop, int(k) + 1).round().astype(np.int64)
        return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]

    def half_range(self):
        """Raw indices whose first nonzero coordinate is positive (one of each +-a pair)."""
        if self.kind == "orthant":
            return 1, self.raw_total
        return self.center + 1, self.raw_total

    # product structure for structured evaluation ----------------------
    def variable_values(self):
        """Per-variable value sets (odometer order) for the product-structured kinds."""
        if self.kind == "bloch":
            raise ArgumentError("the Bloch net has no per-variable product structure")
        h = np.arange(self.lo, self.half + 1, dtype=float)
        if self.field == "real":
            return [h.copy() for _ in range(self.n)]
        pair = (h[:, None] + 1j * h[None, :]).ravel()
        if self.kind == "phase":
            return [h + 0j] + [pair.copy() for _ in range(self.n - 1)]
        return [pair.copy() for _ in range(self.n)]


def grid_stream(grid, chunk=1 << 16, budget=None):
    """Yield the unit vectors of ``grid`` one at a time in deterministic order."""
    check_budget(grid.count, budget)
    for start in range(0, grid.raw_total, chunk):
        _, X = grid.points(start, start + chunk)
        yield from X


def dedup_vectors(X, decimals=12):
    """Remove duplicate unit vectors (collinear lattice points) keeping first occurrences."""
    X = np.asarray(X)
    key = np.round(np.column_stack([X.real, X.imag]) if np.iscomplexobj(X) else X, decimals) + 0.0
    _, first = np.unique(key, axis=0, return_index=True)
    return X[np.sort(first)]


def check_budget(count, budget=None):
    budget = default_budget() if budget is None else int(budget)
    if count > budget:
        raise BudgetError(f"grid has {count} points, above the enumeration budget of {budget}")
    return count


def nearest_distance(grid, u):
    """Distance from unit vector u to the nearest net point among rounding candidates.

    Rounds the scaled vector to the lattice and probes +-1 neighbours.
    For phase-reduced and Bloch nets, u is first brought to the canonical
    chart and the distance is minimised over global phases.
    """
    if hasattr(grid, "nearest_distance"):
        return grid.nearest_distance(u)
    if grid.kind == "bloch":
        u = np.asarray(u, dtype=np.complex128)
        u = u / np.linalg.norm(u)
        z = np.conj(u[0]) * u[1]
        target = np.array([2 * z.real, 2 * z.imag, abs(u[0]) ** 2 - abs(u[1]) ** 2])
    elif grid.field == "complex" and grid.kind == "phase":
        u = np.asarray(u, dtype=np.complex128)
        ph = np.exp(-1j * np.angle(u[0])) if abs(u[0]) > 0 else 1.0
        v = u * ph
        target = np.concatenate([[v[0].real], np.column_stack([v[1:].real, v[1:].imag]).ravel()])
    elif grid.field == "complex":
        u = np.asarray(u, dtype=np.complex128)
        target = np.column_stack([u.real, u.imag]).ravel()
    else:
        target = np.asarray(u, dtype=float)
        if grid.kind == "orthant":
            target = np.abs(target)
    scaled = target * grid.half
    base = np.round(scaled)
    R = grid.R
    if R <= 6:
        offs = np.stack(np.meshgrid(*([np.array([-1, 0, 1])] * R), indexing="ij"), axis=-1).reshape(-1, R)
    else:
        offs = np.vstack([np.zeros((1, R), int), np.eye(R, dtype=int), -np.eye(R, dtype=int)])
    cand = base[None, :] + offs
    cand = cand[np.all((cand >= grid.lo) & (cand <= grid.half), axis=1)]
    cand = cand[np.any(cand != 0, axis=1)]
    pts = cand / np.linalg.norm(cand, axis=1)[:, None]
    if grid.kind == "bloch":
        X = grid.to_vectors(cand)
        overlap = np.abs(X @ np.conj(u))
        return float(np.min(np.sqrt(np.maximum(2.0 - 2.0 * overlap, 0.0))))
    return float(np.min(np.linalg.norm(pts - target[None, :], axis=1)))


def covering_radius_check(grid, samples, rng=None):
    """Largest observed nearest-point distance over random unit vectors."""
    rng = np.random.default_rng(0) if rng is None else rng
    if samples < 1:
        raise ArgumentError("samples must be >= 1")
    worst = 0.0
    for _ in range(int(samples)):
        if grid.field == "real":
            u = rng.normal(size=grid.n)
        else:
            u = rng.normal(size=grid.n) + 1j * rng.normal(size=grid.n)
        u = u / np.linalg.norm(u)
        worst = max(worst, nearest_distance(grid, u))
    return worst


REGIMES = ("symmetric", "pair", "bihermitian")


def regime_threshold(d, regime="symmetric", n=None):
    if regime == "symmetric":
        return d
    if regime == "pair":
        return 2 * d
    if regime == "bihermitian":
        if n is None:
            raise ArgumentError("the bi-Hermitian regime needs n")
        return 2 * d * comb(n + d - 1, d) ** 1.5
    raise ArgumentError(f"regime must be one of {REGIMES}")


def choose_m(epsilon, d, regime="symmetric", n=None):
    """Smallest m with threshold/m <= epsilon/(1+epsilon): m = ceil(thr (1+eps)/eps)."""
    try:
        eps = Fraction(str(epsilon))
    except (ValueError, TypeError) as exc:
        raise ParameterError(f"bad epsilon {epsilon!r}") from exc
    if not 0 < eps < 1:
        raise ParameterError(f"epsilon must lie in (0, 1), got {epsilon}")
    thr = regime_threshold(int(d), regime, n)
    if isinstance(thr, int):
        return int(ceil(thr * (1 + eps) / eps))
    return int(ceil(thr * float((1 + eps) / eps) - 1e-9))


def bloch_m_for_radius(delta):
    """Smallest Bloch resolution whose covering radius is at most delta."""
    if not 0 < delta < sqrt(2):
        raise ParameterError("radius must lie in (0, sqrt 2)")
    m = 1
    while CoveringGrid(m, 2, "complex", "bloch").radius > delta:
        m += 1
    return m


class BlochNet:
    """Qubit net from N Fibonacci points on the Bloch sphere, for phase-invariant objectives.

    The covering radius is certified from the point set itself: on the
    sphere the largest empty cap is centred at a Voronoi vertex, i.e. at the
    normal of a convex-hull facet, so the angular covering radius is the
    largest facet circumradius.  A Bloch angle t corresponds to the C^2
    distance sqrt(2 - 2 cos(t/2)) after optimizing the global phase.
    """

    kind = "bloch"
    field = "complex"
    n = 2
    center = -1

    def __init__(self, N, m=None):
        from scipy.spatial import ConvexHull

        N = int(N)
        if N < 8:
            raise ArgumentError("a Bloch net needs at least 8 points")
        k = np.arange(N) + 0.5
        z = 1.0 - 2.0 * k / N
        r = np.sqrt(np.maximum(1.0 - z * z, 0.0))
        phi = np.pi * (3.0 - sqrt(5.0)) * k
        self.bloch = np.column_stack([r * np.cos(phi), r * np.sin(phi), z])
        hull = ConvexHull(self.bloch)
        normals = hull.equations[:, :3] / np.linalg.norm(hull.equations[:, :3], axis=1, keepdims=True)
        cos_t = float(np.min(np.einsum("fkc,fc->fk", self.bloch[hull.simplices], normals)))
        self.angle = float(np.arccos(np.clip(cos_t, -1.0, 1.0))) + 1e-12
        self.N = self.count = self.raw_total = N
        self.m = m if m is not None else int(ceil(1.0 / self.radius))
        self._vectors = _bloch_to_c2(self.bloch)

    def __repr__(self):
        return f"BlochNet(N={self.N}, radius={self.radius:.6g})"

    @property
    def radius(self):
        return sqrt(max(2.0 - 2.0 * np.cos(self.angle / 2.0), 0.0))

    def describe(self):
        return {"m": self.m, "n": 2, "field": "complex", "net": "bloch", "points": self.N, "radius": self.radius}

    def points(self, start=0, stop=None):
        stop = self.N if stop is None else min(stop, self.N)
        idx = np.arange(start, stop, dtype=np.int64)
        return idx, self._vectors[start:stop]

    def vector_at(self, index):
        return self._vectors[int(index)]

    def all_vectors(self, budget=None, dedup=False):
        check_budget(self.N, budget)
        return self._vectors.copy()

    def half_range(self):
        return 0, self.N

    def nearest_distance(self, u):
        u = np.asarray(u, dtype=np.complex128)
        overlap = np.abs(self._vectors @ np.conj(u / np.linalg.norm(u)))
        return float(np.sqrt(max(2.0 - 2.0 * overlap.max(), 0.0)))


def _bloch_to_c2(b):
    bx, by, bz = b[:, 0], b[:, 1], b[:, 2]
    s = np.sqrt(np.maximum(2.0 * (1.0 + bz), 1e-300))
    out = np.stack([(1.0 + bz) / s + 0j, (bx + 1j * by) / s], axis=1)
    return out / np.linalg.norm(out, axis=1, keepdims=True)


_BLOCH_CACHE = {}


def bloch_net_for_radius(delta, m=None):
    """Smallest Fibonacci Bloch net (N on a 4% ladder) with certified radius <= delta."""
    if not 0 < delta < sqrt(2):
        raise ParameterError("radius must lie in (0, sqrt 2)")
    key = round(float(delta), 15)
    if key not in _BLOCH_CACHE:
        # a cap of C^2-radius delta has Bloch angle t with 2 - 2 cos(t/2) = delta^2
        t = 2.0 * np.arccos(max(1.0 - delta * delta / 2.0, -1.0))
        N = max(8, int(7.0 / (t * t)))
        while True:
            net = BlochNet(N, m)
            if net.radius <= delta:
                break
            N = int(N * 1.04) + 1
        _BLOCH_CACHE[key] = net
    net = _BLOCH_CACHE[key]
    if m is not None:
        net.m = m
    return net
