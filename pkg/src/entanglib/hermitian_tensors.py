"""Hermitian tensors as self-adjoint operators on C^n.

A Hermitian tensor over the ket shape ``(n_1, ..., n_d)`` is stored as an
N x N matrix, N = n_1 ... n_d, with rows indexed by the ket multi-index
and columns by the bra multi-index (row-major flattening on both sides).
"""

from dataclasses import dataclass, field
from itertools import permutations
from math import factorial, prod
import threading

import numpy as np

from .errors import ArgumentError, DimensionError, ValidationError
from .linalg import eigh_desc
from .sym_poly import BiSymTensor, SymTensor, _orbit_ids, monomial_table, sym_dim
from .tensor_core import DenseTensor, _pairs_to_complex, as_tensor, check_shape, num_entries

STRUCTURES = ("general", "bisymmetric", "biskew", "realsymmetric")


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues in descending order and the matching orthonormal eigenvectors (columns)."""

    eigenvalues: np.ndarray
    vectors: np.ndarray
    shape: tuple

    def tensor(self, k):
        return DenseTensor(self.vectors[:, k].reshape(self.shape))

    def reconstruct(self):
        V = self.vectors
        return (V * self.eigenvalues[None, :]) @ V.conj().T


@dataclass(frozen=True, eq=False)
class HermitianTensor:
    shape: tuple
    matrix: np.ndarray
    structure: str = "general"
    _cache: dict = field(default_factory=dict, repr=False, compare=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def __post_init__(self):
        shape = check_shape(self.shape)
        N = num_entries(shape)
        M = np.array(self.matrix, dtype=np.complex128, copy=True)
        if M.shape != (N, N):
            raise DimensionError(f"shape {shape} needs a {N}x{N} matrix, got {M.shape}")
        if not np.all(np.isfinite(M)):
            raise ValidationError("matrix entries must be finite")
        scale = max(np.linalg.norm(M), 1e-300)
        if np.linalg.norm(M - M.conj().T) > 1e-12 * scale:
            raise ValidationError("matrix is not self-adjoint")
        M = 0.5 * (M + M.conj().T)
        M.setflags(write=False)
        if self.structure not in STRUCTURES:
            raise ArgumentError(f"structure must be one of {STRUCTURES}")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "matrix", M)
        if self.structure != "general" and not _has_structure(self, self.structure):
            raise ValidationError(f"matrix does not have {self.structure} structure")

    @property
    def d(self):
        return len(self.shape)

    @property
    def N(self):
        return self.matrix.shape[0]

    def norm(self):
        return float(np.linalg.norm(self.matrix))

    def as_tensor(self):
        """The 2d-mode array b_{i, j} with ket modes first."""
        return self.matrix.reshape(self.shape + self.shape)

    def with_structure(self, structure):
        return HermitianTensor(self.shape, self.matrix, structure)

    def eig(self):
        with self._lock:
            if "eig" not in self._cache:
                self._cache["eig"] = spectral_decomposition(self)
            return self._cache["eig"]

    def to_json(self):
        M = self.matrix
        return {
            "shape": list(self.shape),
            "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in M],
            "structure": self.structure,
        }

    @classmethod
    def from_json(cls, obj):
        if "shape" not in obj or "matrix" not in obj:
            raise ValidationError("Hermitian JSON needs 'shape' and 'matrix'")
        M = _pairs_to_complex(obj["matrix"])
        return cls(tuple(obj["shape"]), M, obj.get("structure", "general"))

    def __add__(self, other):
        if not isinstance(other, HermitianTensor) or other.shape != self.shape:
            return NotImplemented
        return HermitianTensor(self.shape, self.matrix + other.matrix)

    def scaled(self, a):
        return HermitianTensor(self.shape, self.matrix * float(a), self.structure)


@dataclass(frozen=True)
class DensityTensor:
    """Positive semidefinite Hermitian tensor with unit trace."""

    base: HermitianTensor

    @property
    def shape(self):
        return self.base.shape

    @property
    def matrix(self):
        return self.base.matrix

    @property
    def structure(self):
        return self.base.structure

    def to_json(self):
        return self.base.to_json()


def as_hermitian(B):
    return B.base if isinstance(B, DensityTensor) else B


def spectral_decomposition(B):
    B = as_hermitian(B)
    w, V = eigh_desc(B.matrix)
    return SpectralDecomposition(w, V, B.shape)


def trace(B):
    return float(np.trace(as_hermitian(B).matrix).real)


def _check_mode(B, k):
    if not 0 <= int(k) < B.d:
        raise ArgumentError(f"mode {k} out of range 0..{B.d - 1}")
    return int(k)


def partial_trace(B, k):
    """Trace out ket/bra mode k."""
    B = as_hermitian(B)
    k = _check_mode(B, k)
    if B.d == 1:
        raise ArgumentError("cannot trace out the only mode")
    T = B.as_tensor()
    out = np.trace(T, axis1=k, axis2=B.d + k)
    shape = B.shape[:k] + B.shape[k + 1:]
    N = prod(shape)
    return HermitianTensor(shape, out.reshape(N, N))


def partial_transpose(B, k):
    """Swap ket index i_k with bra index j_k."""
    B = as_hermitian(B)
    k = _check_mode(B, k)
    T = np.swapaxes(B.as_tensor(), k, B.d + k)
    return HermitianTensor(B.shape, T.reshape(B.N, B.N))


def is_psd(B, tol=1e-10):
    return bool(spectral_decomposition(B).eigenvalues[-1] >= -tol)


def make_density(B, tol=1e-10):
    B = as_hermitian(B)
    eig = B.eig()
    lam_min = float(eig.eigenvalues[-1])
    tr = trace(B)
    if lam_min < -tol:
        raise ValidationError(f"not positive semidefinite: smallest eigenvalue {lam_min:.3e}")
    if abs(tr - 1.0) > tol:
        raise ValidationError(f"trace is {tr!r}, expected 1")
    return DensityTensor(B)


def pure_density(X, tol=1e-10):
    """X (x) conj(X) as the matrix X X^dagger, tagged with the strongest structure."""
    if isinstance(X, SymTensor):
        X = X.to_dense()
    X = as_tensor(X)
    if abs(X.norm() - 1.0) > tol:
        raise ValidationError(f"state must have unit norm, got {X.norm()!r}")
    v = X.flat()
    B = HermitianTensor(X.shape, np.outer(v, v.conj()))
    return DensityTensor(B.with_structure(classify_structure(B)))


def identity_on_sym(n, d):
    """Orthogonal projector onto S^d(C^n), built as the average of mode permutations."""
    shape = (int(n),) * int(d)
    N = num_entries(shape)
    idx = np.arange(N).reshape(shape)
    P = np.zeros((N, N))
    for perm in permutations(range(d)):
        P[np.arange(N), np.transpose(idx, perm).ravel()] += 1.0
    P /= factorial(d)
    return HermitianTensor(shape, P, "bisymmetric")


def _sym_ket_ok(T, d, tol, sign=False):
    for a in range(d - 1):
        axes = list(range(2 * d))
        axes[a], axes[a + 1] = axes[a + 1], axes[a]
        other = np.transpose(T, axes)
        target = -T if sign else T
        if np.max(np.abs(other - target), initial=0.0) > tol:
            return False
    return True


def _has_structure(B, structure, tol=None):
    if structure == "general":
        return True
    cubical = all(n == B.shape[0] for n in B.shape)
    if not cubical:
        return False
    if tol is None:
        tol = 1e-10 * max(1.0, float(np.max(np.abs(B.matrix), initial=0.0)))
    T = B.as_tensor()
    d = B.d
    if structure == "bisymmetric":
        return _sym_ket_ok(T, d, tol)
    if structure == "biskew":
        return _sym_ket_ok(T, d, tol, sign=True)
    if structure == "realsymmetric":
        if np.max(np.abs(B.matrix.imag), initial=0.0) > tol:
            return False
        if not _sym_ket_ok(T, d, tol):
            return False
        # with ket-symmetry, bra-symmetry (Hermitian) and reality, swapping one ket
        # mode with one bra mode generates the full permutation group
        swapped = np.swapaxes(T, d - 1, d)
        return bool(np.max(np.abs(swapped - T), initial=0.0) <= tol)
    raise ArgumentError(f"unknown structure {structure!r}")


def classify_structure(B, tol=None):
    """Strongest tag among realsymmetric < bisymmetric < general, or biskew."""
    B = as_hermitian(B)
    if B.d >= 2 and _has_structure(B, "bisymmetric", tol):
        if _has_structure(B, "realsymmetric", tol):
            return "realsymmetric"
        return "bisymmetric"
    if B.d >= 2 and _has_structure(B, "biskew", tol):
        return "biskew"
    return "general"


def bisym_coefficients(B):
    """Coefficient form f_{j,l} of a bi-symmetric Hermitian tensor."""
    B = as_hermitian(B)
    if B.structure not in ("bisymmetric", "realsymmetric") and not _has_structure(B, "bisymmetric"):
        raise ValidationError("tensor is not bi-symmetric")
    n, d = B.shape[0], B.d
    ids = _orbit_ids(n, d)
    K = sym_dim(n, d)
    first = np.zeros(K, dtype=np.int64)
    for pos in range(len(ids) - 1, -1, -1):
        first[ids[pos]] = pos
    return BiSymTensor(n, d, B.matrix[np.ix_(first, first)], hermitian=True)


def from_bisym(Bs, structure="bisymmetric"):
    return HermitianTensor((Bs.n,) * Bs.d, Bs.dense_matrix(), structure)


def to_realsym_poly(B):
    """A real symmetric Hermitian tensor on n^{x d} as a SymTensor of degree 2d."""
    B = as_hermitian(B)
    if not _has_structure(B, "realsymmetric"):
        raise ValidationError("tensor is not real and fully symmetric")
    n, d = B.shape[0], B.d
    J, _, _ = monomial_table(2 * d, n)
    coeffs = np.zeros(len(J))
    flat = B.matrix.real.reshape((n,) * (2 * d))
    for k, j in enumerate(J):
        index = [i for i in range(n) for _ in range(int(j[i]))]
        coeffs[k] = flat[tuple(index)]
    return SymTensor(n, 2 * d, coeffs, "real")


def from_realsym_poly(S, d=None):
    """Inverse of ``to_realsym_poly``: view S in S^{2d}(R^n) as an operator on n^{x d}."""
    if S.d % 2:
        raise ArgumentError("degree must be even")
    d = S.d // 2 if d is None else d
    dense = S.to_dense().data.real
    N = S.n ** d
    return HermitianTensor((S.n,) * d, dense.reshape(N, N), "realsymmetric")
