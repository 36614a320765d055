"""Dense revised simplex for min c.x s.t. A x = b, x >= 0.

Two phases with artificial variables; the basis inverse is kept
explicitly and refreshed by rank-one (eta) updates with periodic
refactorization.  Entering variables are chosen by Dantzig's rule; after
a run of degenerate pivots the solver switches to Bland's rule until the
objective moves again, which rules out cycling.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError

OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"


@dataclass
class LPProblem:
    c: np.ndarray
    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=float).ravel()
        self.A = np.atleast_2d(np.asarray(self.A, dtype=float))
        self.b = np.asarray(self.b, dtype=float).ravel()
        M, N = self.A.shape
        if self.c.size != N or self.b.size != M:
            raise ValidationError(f"LP shapes disagree: A {self.A.shape}, c {self.c.size}, b {self.b.size}")
        if not (np.all(np.isfinite(self.A)) and np.all(np.isfinite(self.b)) and np.all(np.isfinite(self.c))):
            raise ValidationError("LP data must be finite")


@dataclass
class LPSolution:
    status: str
    value: float = float("nan")
    x: np.ndarray = None
    duals: np.ndarray = None
    basis: list = field(default_factory=list)
    iterations: int = 0

    @property
    def support(self):
        return [] if self.x is None else [int(j) for j in np.flatnonzero(self.x > 0)]


class _Simplex:
    def __init__(self, A, b, c, basis, tol=1e-10, refactor=50):
        self.A, self.b, self.c = A, b, c
        self.M = A.shape[0]
        self.basis = list(basis)
        self.tol = tol
        self.refactor = refactor
        self.iterations = 0
        self._factor()

    def _factor(self):
        self.Binv = np.linalg.inv(self.A[:, self.basis])
        self.xB = self.Binv @ self.b
        self._since = 0

    def duals(self):
        return self.c[self.basis] @ self.Binv

    def run(self, allowed, max_iter=50000):
        """Iterate to optimality over columns with allowed[j] True. Returns status."""
        stall, bland = 0, False
        last = self.c[self.basis] @ self.xB
        while self.iterations < max_iter:
            y = self.duals()
            rc = self.c - y @ self.A
            rc[~allowed] = 0.0
            rc[self.basis] = 0.0
            scale = 1.0 + np.abs(self.c).max(initial=0.0)
            cand = np.flatnonzero(rc < -self.tol * scale)
            if cand.size == 0:
                return OPTIMAL
            q = int(cand[0]) if bland else int(cand[np.argmin(rc[cand])])
            dcol = self.Binv @ self.A[:, q]
            pos = dcol > 1e-11
            if not np.any(pos):
                return UNBOUNDED
            ratios = np.full(self.M, np.inf)
            ratios[pos] = np.maximum(self.xB[pos], 0.0) / dcol[pos]
            theta = ratios.min()
            ties = np.flatnonzero(ratios <= theta + 1e-12 * (1 + theta))
            if bland:
                r = int(min(ties, key=lambda i: self.basis[i]))
            else:
                r = int(ties[np.argmax(dcol[ties])])
            self._pivot(r, q, dcol)
            self.iterations += 1
            obj = self.c[self.basis] @ self.xB
            if obj < last - 1e-12 * (1 + abs(last)):
                stall, bland, last = 0, False, obj
            else:
                stall += 1
                if stall > 20:
                    bland = True
        raise RuntimeError("simplex iteration limit reached")

    def _pivot(self, r, q, dcol):
        piv = dcol[r]
        E = self.Binv
        row = E[r] / piv
        E -= np.outer(dcol, row)
        E[r] = row
        self.basis[r] = q
        self._since += 1
        if self._since >= self.refactor:
            self._factor()
        else:
            self.xB = E @ self.b


def solve_lp(problem, basis=None, tol=1e-10):
    """Solve an LPProblem; infeasible and unbounded come back as statuses.

    ``basis`` optionally warm-starts from a primal-feasible basis of column
    indices (one per row).
    """
    A, b, c = problem.A.copy(), problem.b.copy(), problem.c
    M, N = A.shape
    flip = b < 0
    A[flip] *= -1
    b[flip] *= -1
    if M == 0:
        if np.any(c < -tol):
            return LPSolution(UNBOUNDED)
        return LPSolution(OPTIMAL, 0.0, np.zeros(N), np.zeros(0), [], 0)

    if basis is not None and len(basis) == M:
        try:
            B = A[:, list(basis)]
            if np.linalg.cond(B) < 1e12:
                xB = np.linalg.solve(B, b)
                if np.all(xB >= -1e-9):
                    s = _Simplex(A, b, c, basis, tol)
                    status = s.run(np.ones(N, bool))
                    return _finish(s, status, N, M, flip, keep=np.arange(M))
        except np.linalg.LinAlgError:
            pass

    # phase one on [A | I]
    A1 = np.hstack([A, np.eye(M)])
    c1 = np.concatenate([np.zeros(N), np.ones(M)])
    s = _Simplex(A1, b, c1, list(range(N, N + M)), tol)
    s.run(np.ones(N + M, bool))
    infeas = float(c1[s.basis] @ s.xB)
    if infeas > 1e-8 * (1 + np.abs(b).max()):
        return LPSolution(INFEASIBLE, iterations=s.iterations)
    # drive zero-level artificials out of the basis; drop redundant rows
    keep = np.ones(M, bool)
    for r in range(M):
        if s.basis[r] < N:
            continue
        row = s.Binv[r] @ A
        row[[j for j in s.basis if j < N]] = 0.0
        j = int(np.argmax(np.abs(row)))
        if abs(row[j]) > 1e-9:
            dcol = s.Binv @ A1[:, j]
            s._pivot(r, j, dcol)
        else:
            keep[s.basis[r] - N] = False
    rows = np.flatnonzero(keep)
    basis2 = [j for j in s.basis if j < N]
    s2 = _Simplex(A[rows], b[rows], c, basis2, tol)
    status = s2.run(np.ones(N, bool))
    s2.iterations += s.iterations
    return _finish(s2, status, N, M, flip, keep=rows)


def _finish(s, status, N, M, flip, keep):
    if status != OPTIMAL:
        return LPSolution(status, iterations=s.iterations)
    x = np.zeros(N)
    x[s.basis] = np.maximum(s.xB, 0.0)
    y = np.zeros(M)
    y[keep] = s.duals()
    y[flip] *= -1
    return LPSolution(OPTIMAL, float(s.c @ x), x, y, list(s.basis), s.iterations)


def vertex_enumeration(problem):
    """Brute-force optimum over all basic feasible solutions (small test oracle)."""
    from itertools import combinations

    A, b, c = problem.A, problem.b, problem.c
    M, N = A.shape
    best = None
    for cols in combinations(range(N), M):
        B = A[:, cols]
        if abs(np.linalg.det(B)) < 1e-12:
            continue
        xB = np.linalg.solve(B, b)
        if np.any(xB < -1e-9):
            continue
        val = float(c[list(cols)] @ xB)
        best = val if best is None else min(best, val)
    return best
