"""Dense complex tensors: storage, inner products, rank-one tensors, unfoldings.

A tensor is stored as a read-only complex128 numpy array in row-major
(C) order, so the flat index of ``(i_1, ..., i_d)`` is the usual
``np.ravel_multi_index`` value.  Modes are 0-based throughout.
"""

from dataclasses import dataclass
from math import prod

import numpy as np

from .errors import ArgumentError, CapacityError, DimensionError, ValidationError

MAX_ENTRIES = 2**31


def check_shape(dims):
    """Validate a shape and return it as a tuple of ints."""
    try:
        dims = tuple(int(n) for n in dims)
    except TypeError as exc:
        raise ArgumentError(f"shape must be a sequence of integers, got {dims!r}") from exc
    if len(dims) == 0:
        raise ArgumentError("shape must have at least one mode")
    if any(n < 1 for n in dims):
        raise ArgumentError(f"every dimension must be >= 1, got {dims}")
    num_entries(dims)
    return dims


def num_entries(dims):
    """N(n) = prod(dims) as an exact integer, rejecting sizes above 2**31."""
    total = prod(int(n) for n in dims)
    if total > MAX_ENTRIES:
        raise CapacityError(f"tensor with shape {tuple(dims)} has {total} entries (limit {MAX_ENTRIES})")
    return total


def flat_index(shape, index):
    return int(np.ravel_multi_index(tuple(index), shape))


def multi_index(shape, k):
    return tuple(int(i) for i in np.unravel_index(int(k), shape))


@dataclass(frozen=True, eq=False)
class DenseTensor:
    """Immutable d-mode complex tensor."""

    data: np.ndarray

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.complex128, copy=True)
        if arr.ndim == 0:
            raise ArgumentError("a tensor needs at least one mode")
        check_shape(arr.shape)
        if not np.all(np.isfinite(arr)):
            raise ValidationError("tensor entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @classmethod
    def from_entries(cls, shape, entries):
        shape = check_shape(shape)
        flat = np.asarray(entries, dtype=np.complex128).ravel()
        if flat.size != num_entries(shape):
            raise DimensionError(f"shape {shape} needs {num_entries(shape)} entries, got {flat.size}")
        return cls(flat.reshape(shape))

    @property
    def shape(self):
        return self.data.shape

    @property
    def d(self):
        return self.data.ndim

    @property
    def size(self):
        return self.data.size

    def flat(self):
        return self.data.ravel()

    def norm(self):
        return float(np.linalg.norm(self.data.ravel()))

    def is_real(self, tol=0.0):
        return bool(np.max(np.abs(self.data.imag), initial=0.0) <= tol)

    def conj(self):
        return DenseTensor(np.conj(self.data))

    def scaled(self, c):
        return DenseTensor(self.data * c)

    def normalized(self):
        nrm = self.norm()
        if nrm == 0:
            raise ValidationError("cannot normalize the zero tensor")
        return self.scaled(1.0 / nrm)

    def __add__(self, other):
        if not isinstance(other, DenseTensor):
            return NotImplemented
        _same_shape(self, other)
        return DenseTensor(self.data + other.data)

    def __sub__(self, other):
        if not isinstance(other, DenseTensor):
            return NotImplemented
        _same_shape(self, other)
        return DenseTensor(self.data - other.data)

    def allclose(self, other, atol=1e-12):
        return self.shape == other.shape and bool(np.allclose(self.data, other.data, rtol=0, atol=atol))

    def to_json(self):
        flat = self.data.ravel()
        return {"shape": list(self.shape), "entries": [[float(z.real), float(z.imag)] for z in flat]}

    @classmethod
    def from_json(cls, obj):
        if "shape" not in obj or "entries" not in obj:
            raise ValidationError("tensor JSON needs 'shape' and 'entries'")
        entries = _pairs_to_complex(obj["entries"])
        return cls.from_entries(obj["shape"], entries)


def _pairs_to_complex(pairs):
    arr = np.asarray(pairs, dtype=float)
    if arr.ndim == 1 and arr.size == 0:
        return arr.astype(np.complex128)
    if arr.shape[-1] != 2:
        raise ValidationError("complex entries must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def _same_shape(X, Y):
    if X.shape != Y.shape:
        raise DimensionError(f"shape mismatch: {X.shape} vs {Y.shape}")


def as_tensor(X):
    return X if isinstance(X, DenseTensor) else DenseTensor(X)


def inner_product(X, Y):
    """<X, Y> = sum conj(x_i) y_i (conjugate-linear in X)."""
    X, Y = as_tensor(X), as_tensor(Y)
    _same_shape(X, Y)
    return complex(np.vdot(X.data.ravel(), Y.data.ravel()))


def rank_one(vectors):
    """x_1 (x) x_2 (x) ... (x) x_d."""
    vectors = [np.asarray(v, dtype=np.complex128).ravel() for v in vectors]
    if not vectors:
        raise ArgumentError("rank_one needs at least one vector")
    for v in vectors:
        if v.size == 0 or not np.any(v):
            raise ArgumentError("rank_one factors must be nonzero")
    num_entries([v.size for v in vectors])
    out = vectors[0]
    for v in vectors[1:]:
        out = np.multiply.outer(out, v)
    return DenseTensor(out)


def unfold(X, left_modes):
    """Matrix with rows indexed by ``left_modes`` and columns by the rest."""
    X = as_tensor(X)
    left = sorted(set(int(k) for k in left_modes))
    if len(left) != len(list(left_modes)):
        raise ArgumentError(f"repeated modes in {left_modes}")
    if not left or len(left) >= X.d or left[0] < 0 or left[-1] >= X.d:
        raise ArgumentError(f"left_modes must be a nonempty proper subset of 0..{X.d - 1}")
    right = [k for k in range(X.d) if k not in left]
    rows = prod(X.shape[k] for k in left)
    return np.transpose(X.data, left + right).reshape(rows, -1)


def tensor_product(X, Y):
    """Outer product with shape (shape(X), shape(Y))."""
    X, Y = as_tensor(X), as_tensor(Y)
    num_entries(X.shape + Y.shape)
    return DenseTensor(np.multiply.outer(X.data, Y.data))


def basis_tensor(shape, index):
    shape = check_shape(shape)
    out = np.zeros(shape, dtype=np.complex128)
    out[tuple(index)] = 1.0
    return DenseTensor(out)


def ket(bits, amplitude=1.0):
    """Computational basis tensor for a string such as ``"0110"`` (qubits)."""
    return basis_tensor((2,) * len(bits), [int(b) for b in bits]).scaled(amplitude)


def two_by_two_minors_vanish(matrix, tol=1e-12):
    """True when every 2x2 minor is (numerically) zero."""
    M = np.asarray(matrix)
    r, c = M.shape
    scale = max(1.0, float(np.max(np.abs(M), initial=0.0))) ** 2
    for i in range(r):
        for k in range(i + 1, r):
            minors = M[i, :, None] * M[k, None, :] - M[i, None, :] * M[k, :, None]
            if np.max(np.abs(minors), initial=0.0) > tol * scale:
                return False
    return True
