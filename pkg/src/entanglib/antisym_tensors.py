"""Antisymmetric (fermionic) tensors: wedge products and their pure densities."""

from dataclasses import dataclass
from itertools import permutations
from math import factorial, sqrt

import numpy as np

from .errors import ArgumentError, DimensionError, UnsupportedError, ValidationError
from .hermitian_tensors import DensityTensor, HermitianTensor
from .tensor_core import DenseTensor, as_tensor, num_entries


def perm_sign(perm):
    perm = list(perm)
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True, eq=False)
class WedgeTensor:
    n: int
    d: int
    dense: DenseTensor

    def norm(self):
        return self.dense.norm()

    def to_json(self):
        out = self.dense.to_json()
        out["kind"] = "antisymmetric"
        return out

    @classmethod
    def from_json(cls, obj):
        X = DenseTensor.from_json(obj)
        W = antisymmetrize(X)
        if not W.dense.allclose(X, atol=1e-10 * max(1.0, X.norm())):
            raise ValidationError("tensor is not antisymmetric")
        return W


def wedge(*vectors):
    """(1/sqrt(d!)) sum_sigma sign(sigma) x_sigma(1) (x) ... (x) x_sigma(d).

    Returns the zero tensor when d > n.
    """
    if len(vectors) == 1 and np.ndim(vectors[0]) == 2:
        vectors = list(np.asarray(vectors[0]))
    vecs = [np.asarray(v, dtype=np.complex128).ravel() for v in vectors]
    if not vecs:
        raise ArgumentError("wedge needs at least one vector")
    n, d = vecs[0].size, len(vecs)
    if any(v.size != n for v in vecs):
        raise DimensionError("all wedge factors must have the same length")
    num_entries((n,) * d)
    out = np.zeros((n,) * d, dtype=np.complex128)
    if d <= n:
        for perm in permutations(range(d)):
            term = vecs[perm[0]]
            for k in perm[1:]:
                term = np.multiply.outer(term, vecs[k])
            out += perm_sign(perm) * term
        out /= sqrt(factorial(d))
    return WedgeTensor(n, d, DenseTensor(out))


def antisymmetrize(X):
    """Orthogonal projection (1/d!) sum_sigma sign(sigma) X^sigma onto A^d(F^n)."""
    X = as_tensor(X)
    n = X.shape[0]
    if any(s != n for s in X.shape):
        raise DimensionError(f"antisymmetrize needs a cubical shape, got {X.shape}")
    d = X.d
    out = np.zeros(X.shape, dtype=np.complex128)
    for perm in permutations(range(d)):
        out += perm_sign(perm) * np.transpose(X.data, perm)
    return WedgeTensor(n, d, DenseTensor(out / factorial(d)))


def slater_rank_d2(F, tol=1e-10):
    """Half the rank of the skew-symmetric matrix of a degree-2 wedge tensor."""
    dense = F.dense if isinstance(F, WedgeTensor) else as_tensor(F)
    if dense.d != 2:
        raise UnsupportedError("Slater rank is only implemented for d = 2")
    M = dense.data
    if np.max(np.abs(M + M.T), initial=0.0) > tol * max(1.0, np.abs(M).max(initial=0.0)):
        raise ValidationError("matrix is not skew-symmetric")
    s = np.linalg.svd(M, compute_uv=False)
    r = int(np.sum(s > tol * max(1.0, s[0] if s.size else 0.0)))
    return r // 2


def gram_schmidt(vectors, tol=1e-12):
    """Orthonormalize rows in order; raises on dependence."""
    out = []
    for v in vectors:
        w = np.asarray(v, dtype=np.complex128).ravel().copy()
        for u in out:
            w -= np.vdot(u, w) * u
        nrm = np.linalg.norm(w)
        if nrm < tol:
            raise ValidationError("vectors are linearly dependent")
        out.append(w / nrm)
    return np.array(out)


def wedge_pure_density(*vectors, tol=1e-10):
    """Pure density of the unit wedge of orthonormal vectors (biskew structure)."""
    if len(vectors) == 1 and np.ndim(vectors[0]) == 2:
        vectors = list(np.asarray(vectors[0]))
    X = np.array([np.asarray(v, dtype=np.complex128).ravel() for v in vectors])
    G = X.conj() @ X.T
    if np.max(np.abs(G - np.eye(len(X))), initial=0.0) > tol:
        raise ValidationError("wedge_pure_density needs orthonormal vectors")
    W = wedge(*X)
    v = W.dense.flat()
    B = HermitianTensor(W.dense.shape, np.outer(v, v.conj()), "biskew")
    return DensityTensor(B)


def skew_unitary_example(n):
    """Unit-norm n x n skew matrix (even n) with all singular values 1/sqrt(n)."""
    if n % 2:
        raise ArgumentError("n must be even")
    M = np.zeros((n, n))
    for k in range(0, n, 2):
        M[k, k + 1], M[k + 1, k] = 1.0, -1.0
    return M / sqrt(n)
