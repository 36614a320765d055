"""Symmetric tensors coded as homogeneous polynomials.

A symmetric tensor S in S^d(F^n) is stored by its distinct entries f_j,
one per exponent vector j = (j_1, ..., j_n) with sum d.  The entry
s_{i_1...i_d} equals f_j where j_k counts how often k occurs among the
indices.  The associated polynomial is

    f(x) = sum_j c(j) f_j x^j,      c(j) = d! / (j_1! ... j_n!),

and the Hilbert norm is sqrt(sum_j c(j) |f_j|^2).  Exponent vectors are
always listed in descending lexicographic order.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import comb
import json

import numpy as np

from .errors import ArgumentError, CapacityError, DimensionError, ValidationError
from .tensor_core import DenseTensor, as_tensor, num_entries

INT64_MAX = 2**63 - 1
FIELDS = ("complex", "real")


def multinomial(j):
    """Exact d!/(j_1!...j_n!) built from binomial products."""
    j = [int(v) for v in j]
    if any(v < 0 for v in j):
        raise ArgumentError(f"exponents must be nonnegative, got {j}")
    total, running = 1, 0
    for v in j:
        running += v
        total *= comb(running, v)
        if total > INT64_MAX:
            raise CapacityError(f"multinomial coefficient of {tuple(j)} exceeds 64 bits")
    return total


def enumerate_J(d, n):
    """All exponent vectors of length n summing to d, descending lexicographic."""
    d, n = int(d), int(n)
    if d < 0 or n < 1:
        raise ArgumentError("need d >= 0 and n >= 1")
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(tuple(prefix + [left]))
            return
        for v in range(left, -1, -1):
            rec(prefix + [v], left - v, slots - 1)

    rec([], d, n)
    return out


def sym_dim(n, d):
    return comb(n + d - 1, d)


@lru_cache(maxsize=256)
def monomial_table(d, n):
    """(J, c, index): exponent array (K, n), multinomials (K,), lookup dict."""
    J = enumerate_J(d, n)
    arr = np.array(J, dtype=np.int64).reshape(len(J), n)
    c = np.array([multinomial(j) for j in J], dtype=float)
    arr.setflags(write=False)
    c.setflags(write=False)
    return arr, c, {j: k for k, j in enumerate(J)}


def _powers(x, d):
    """x[..., k] ** p for p = 0..d, shape (..., n, d + 1)."""
    x = np.asarray(x)
    pw = np.empty(x.shape + (d + 1,), dtype=np.result_type(x.dtype, float))
    pw[..., 0] = 1.0
    for p in range(1, d + 1):
        pw[..., p] = pw[..., p - 1] * x
    return pw


def monomials(x, d):
    """Raw monomials x^j for all j in J(d, n); x has shape (..., n)."""
    x = np.asarray(x)
    n = x.shape[-1]
    J, _, _ = monomial_table(d, n)
    pw = _powers(x, d)
    out = np.ones(x.shape[:-1] + (J.shape[0],), dtype=pw.dtype)
    for k in range(n):
        out = out * pw[..., k, J[:, k]]
    return out


def monomial_jacobian(x, d):
    """d(x^j)/dx_k for all j, k; shape (..., K, n)."""
    x = np.asarray(x)
    n = x.shape[-1]
    J, _, _ = monomial_table(d, n)
    pw = _powers(x, d)
    K = J.shape[0]
    jac = np.empty(x.shape[:-1] + (K, n), dtype=pw.dtype)
    for k in range(n):
        term = J[:, k] * pw[..., k, np.maximum(J[:, k] - 1, 0)]
        for q in range(n):
            if q != k:
                term = term * pw[..., q, J[:, q]]
        jac[..., k] = term
    return jac


def exponent_of(index, n):
    """Exponent vector counting occurrences of each value in a multi-index."""
    j = [0] * n
    for i in index:
        j[i] += 1
    return tuple(j)


@lru_cache(maxsize=64)
def _orbit_ids(n, d):
    """For each flat index of n^{x d}, the position of its exponent in J(d, n)."""
    num_entries((n,) * d)
    _, _, index = monomial_table(d, n)
    idx = np.indices((n,) * d).reshape(d, -1)
    counts = np.zeros((n, idx.shape[1]), dtype=np.int64)
    for k in range(n):
        counts[k] = np.sum(idx == k, axis=0)
    ids = np.array([index[tuple(col)] for col in counts.T], dtype=np.int64)
    ids.setflags(write=False)
    return ids


@dataclass(frozen=True, eq=False)
class SymTensor:
    """Symmetric tensor of degree d in n variables, coefficients f_j in J-order."""

    n: int
    d: int
    coeffs: np.ndarray
    field: str = "complex"

    def __post_init__(self):
        n, d = int(self.n), int(self.d)
        if n < 1 or d < 1:
            raise ArgumentError("need n >= 1 and d >= 1")
        K = sym_dim(n, d)
        f = np.array(self.coeffs, dtype=np.complex128, copy=True).ravel()
        if f.size != K:
            raise DimensionError(f"S^{d}(F^{n}) has {K} coefficients, got {f.size}")
        if not np.all(np.isfinite(f)):
            raise ValidationError("coefficients must be finite")
        if self.field not in FIELDS:
            raise ArgumentError(f"field must be one of {FIELDS}")
        if self.field == "real" and np.max(np.abs(f.imag), initial=0.0) > 0:
            raise ValidationError("real symmetric tensor has nonzero imaginary parts")
        f.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "coeffs", f)

    # construction -----------------------------------------------------
    @classmethod
    def from_dict(cls, n, d, coeffs, field="complex"):
        _, _, index = monomial_table(d, n)
        f = np.zeros(len(index), dtype=np.complex128)
        for j, v in coeffs.items():
            j = tuple(int(t) for t in j)
            if j not in index:
                raise ValidationError(f"{j} is not an exponent vector of degree {d} in {n} variables")
            f[index[j]] = v
        return cls(n, d, f, field)

    @classmethod
    def from_polynomial(cls, n, d, terms, field="complex"):
        """From weighted coefficients a_j of f(x) = sum a_j x^j, i.e. f_j = a_j / c(j)."""
        return cls.from_dict(n, d, {j: a / multinomial(j) for j, a in terms.items()}, field)

    @classmethod
    def from_dicke(cls, n, d, dicke, field="complex"):
        """From coordinates in the orthonormal Dicke basis (f_j = v_j / sqrt(c(j)))."""
        _, c, _ = monomial_table(d, n)
        return cls(n, d, np.asarray(dicke, dtype=np.complex128) / np.sqrt(c), field)

    @classmethod
    def from_dense(cls, X, tol=1e-10, field=None):
        """Exact conversion of a dense symmetric tensor; rejects non-symmetric input."""
        X = as_tensor(X)
        S = symmetrize(X)
        if not S.to_dense().allclose(X, atol=tol * max(1.0, X.norm())):
            raise ValidationError("dense tensor is not symmetric")
        if field is None:
            field = "real" if X.is_real() else "complex"
        if field == "real":
            S = cls(S.n, S.d, S.coeffs.real, "real")
        return S

    # views ------------------------------------------------------------
    @property
    def exponents(self):
        return monomial_table(self.d, self.n)[0]

    @property
    def multinomials(self):
        return monomial_table(self.d, self.n)[1]

    def coeff(self, j):
        return complex(self.coeffs[monomial_table(self.d, self.n)[2][tuple(j)]])

    def as_dict(self):
        return {tuple(int(t) for t in j): complex(v) for j, v in zip(self.exponents, self.coeffs)}

    def weighted(self):
        """Polynomial coefficients c(j) f_j."""
        return self.multinomials * self.coeffs

    def dicke(self):
        """Coordinates in the orthonormal Dicke basis, sqrt(c(j)) f_j."""
        return np.sqrt(self.multinomials) * self.coeffs

    def to_dense(self):
        return sym_to_dense(self)

    def hilbert_norm(self):
        return hilbert_norm(self)

    def norm(self):
        return hilbert_norm(self)

    def eval(self, x):
        return eval_poly(self, x)

    def conj(self):
        return SymTensor(self.n, self.d, np.conj(self.coeffs), self.field)

    def scaled(self, a):
        field = self.field if np.isreal(a) else "complex"
        return SymTensor(self.n, self.d, self.coeffs * a, field)

    def normalized(self):
        return self.scaled(1.0 / self.norm())

    def with_field(self, field):
        coeffs = self.coeffs.real if field == "real" else self.coeffs
        if field == "real" and np.max(np.abs(self.coeffs.imag), initial=0.0) > 0:
            raise ValidationError("tensor has complex coefficients")
        return SymTensor(self.n, self.d, coeffs, field)

    def __add__(self, other):
        if not isinstance(other, SymTensor) or (other.n, other.d) != (self.n, self.d):
            return NotImplemented
        field = "real" if self.field == other.field == "real" else "complex"
        return SymTensor(self.n, self.d, self.coeffs + other.coeffs, field)

    def __sub__(self, other):
        return self + other.scaled(-1.0)

    def allclose(self, other, atol=1e-12):
        return (self.n, self.d) == (other.n, other.d) and bool(
            np.allclose(self.coeffs, other.coeffs, rtol=0, atol=atol))

    def to_json(self):
        out = {"n": self.n, "d": self.d, "coeffs": {}}
        for j, v in zip(self.exponents, self.coeffs):
            if v != 0:
                out["coeffs"][json.dumps([int(t) for t in j])] = [float(v.real), float(v.imag)]
        if self.field == "real":
            out["field"] = "real"
        return out

    @classmethod
    def from_json(cls, obj):
        try:
            n, d = int(obj["n"]), int(obj["d"])
            raw = obj["coeffs"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError("symmetric tensor JSON needs 'n', 'd' and 'coeffs'") from exc
        coeffs = {}
        for key, pair in raw.items():
            try:
                j = tuple(json.loads(key))
            except json.JSONDecodeError as exc:
                raise ValidationError(f"bad exponent key {key!r}") from exc
            if len(j) != n or sum(j) != d:
                raise ValidationError(f"exponent {key} does not match n={n}, d={d}")
            if isinstance(pair, (int, float)):
                pair = [pair, 0.0]
            coeffs[j] = complex(pair[0], pair[1])
        field = obj.get("field", "complex")
        if field == "real" and any(v.imag != 0 for v in coeffs.values()):
            raise ValidationError("real symmetric tensor has nonzero imaginary parts")
        return cls.from_dict(n, d, coeffs, field)


def sym_to_dense(S):
    ids = _orbit_ids(S.n, S.d)
    return DenseTensor(S.coeffs[ids].reshape((S.n,) * S.d))


def hilbert_norm(S):
    return float(np.sqrt(np.sum(S.multinomials * np.abs(S.coeffs) ** 2)))


def eval_poly(S, x):
    """f(x) = sum_j c(j) f_j x^j; x may be a batch of shape (..., n)."""
    x = np.asarray(x)
    if x.shape[-1] != S.n:
        raise DimensionError(f"point has {x.shape[-1]} coordinates, tensor has n={S.n}")
    vals = monomials(x, S.d) @ S.weighted()
    return complex(vals) if vals.ndim == 0 else vals


def symmetrize(X):
    """Orbit average of a cubical tensor, returned in coefficient form."""
    X = as_tensor(X)
    n = X.shape[0]
    if any(s != n for s in X.shape):
        raise DimensionError(f"symmetrize needs a cubical shape, got {X.shape}")
    ids = _orbit_ids(n, X.d)
    K = sym_dim(n, X.d)
    flat = X.data.ravel()
    sums = np.bincount(ids, weights=flat.real, minlength=K) + 1j * np.bincount(ids, weights=flat.imag, minlength=K)
    counts = np.bincount(ids, minlength=K)
    field = "real" if X.is_real() else "complex"
    return SymTensor(n, X.d, sums / counts, field)


def poly_mul(a, b):
    """Product of polynomials given as {exponent: weighted coefficient}."""
    out = {}
    for ja, va in a.items():
        for jb, vb in b.items():
            j = tuple(x + y for x, y in zip(ja, jb))
            out[j] = out.get(j, 0) + va * vb
    return out


def poly_pow(a, power):
    if power < 1:
        raise ArgumentError("power must be >= 1")
    out = dict(a)
    for _ in range(power - 1):
        out = poly_mul(out, a)
    return out


@dataclass(frozen=True, eq=False)
class BiSymTensor:
    """Bi-symmetric tensor: coefficients f_{j,l} over pairs of exponent vectors."""

    n: int
    d: int
    F: np.ndarray
    hermitian: bool = False

    def __post_init__(self):
        K = sym_dim(self.n, self.d)
        F = np.array(self.F, dtype=np.complex128, copy=True)
        if F.shape != (K, K):
            raise DimensionError(f"coefficient matrix must be {K}x{K}, got {F.shape}")
        if self.hermitian and not np.allclose(F, F.conj().T, rtol=0, atol=1e-12 * max(1.0, np.abs(F).max(initial=0))):
            raise ValidationError("hermitian flag set but f_{l,j} != conj(f_{j,l})")
        F.setflags(write=False)
        object.__setattr__(self, "F", F)

    @classmethod
    def pure(cls, S):
        """Coefficients of the pure density S (x) conj(S): f_{j,l} = s_j conj(s_l)."""
        return cls(S.n, S.d, np.outer(S.coeffs, np.conj(S.coeffs)), hermitian=True)

    @property
    def multinomials(self):
        return monomial_table(self.d, self.n)[1]

    def dicke_matrix(self):
        """The same operator in the orthonormal Dicke basis: C^{1/2} F C^{1/2}."""
        s = np.sqrt(self.multinomials)
        return s[:, None] * self.F * s[None, :]

    @classmethod
    def from_dicke_matrix(cls, n, d, H, hermitian=True):
        _, c, _ = monomial_table(d, n)
        s = 1.0 / np.sqrt(c)
        return cls(n, d, s[:, None] * np.asarray(H) * s[None, :], hermitian)

    def dense_matrix(self):
        """Full N x N matrix on (C^n)^{(x)d}."""
        ids = _orbit_ids(self.n, self.d)
        return self.F[np.ix_(ids, ids)]


def bisym_eval(B, x, y):
    """sum_{j,l} c(j) c(l) f_{j,l} x^j y^l (batched over leading axes)."""
    c = B.multinomials
    px = monomials(np.asarray(x), B.d) * c
    py = monomials(np.asarray(y), B.d) * c
    vals = np.einsum("...j,jl,...l->...", px, B.F, py)
    return complex(vals) if np.ndim(vals) == 0 else vals
