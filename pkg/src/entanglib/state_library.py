"""Named states and gadget tensors with their known norm values."""

from dataclasses import dataclass, field
from math import comb, pi, sqrt

import numpy as np
import sympy as sp

from .errors import ArgumentError, DimensionError, ValidationError
from .hermitian_tensors import DensityTensor, HermitianTensor, from_realsym_poly, identity_on_sym
from .sym_poly import SymTensor, monomial_table, monomials, multinomial, poly_pow
from .tensor_core import DenseTensor

ZETA = complex(-0.5, sqrt(3) / 2)


@dataclass(frozen=True, eq=False)
class NamedState:
    label: str
    tensor: object
    known_spectral: object = None
    known_nuclear: object = None
    provenance: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def spectral_value(self):
        return None if self.known_spectral is None else float(self.known_spectral)

    @property
    def nuclear_value(self):
        return None if self.known_nuclear is None else float(self.known_nuclear)

    def dense(self):
        T = self.tensor
        return T.to_dense() if isinstance(T, SymTensor) else T

    def to_json(self):
        out = {"label": self.label, "tensor": self.tensor.to_json(), "provenance": self.provenance}
        if isinstance(self.tensor, SymTensor):
            out["kind"] = "symmetric"
        if self.known_spectral is not None:
            out["known_spectral"] = float(self.known_spectral)
            out["known_spectral_exact"] = str(self.known_spectral)
        if self.known_nuclear is not None:
            out["known_nuclear"] = float(self.known_nuclear)
            out["known_nuclear_exact"] = str(self.known_nuclear)
        return out


def _from_rank_one_sum(n, d, terms, field="complex"):
    """SymTensor of sum w v^{(x)d}; entries of v^{(x)d} are the raw monomials v^j."""
    f = np.zeros(comb(n + d - 1, d), dtype=np.complex128)
    for w, v in terms:
        f += w * monomials(np.asarray(v, dtype=np.complex128), d)
    if field == "real":
        f = f.real
    return SymTensor(n, d, f, field)


# ----------------------------------------------------------------------
# qubit states
# ----------------------------------------------------------------------
def w_state():
    W = SymTensor.from_dict(2, 3, {(2, 1): 1 / sqrt(3)})
    return NamedState("w", W, sp.Rational(2, 3), sp.Rational(3, 2),
                      "(|100> + |010> + |001>)/sqrt 3; spectral 2/3, nuclear 3/2")


def w_zeta_decomposition():
    """Three-term symmetric decomposition of W with total weight 3/2.

    W = (1/(6 sqrt 3)) [ (sqrt2, 1)^3 + z^2 (sqrt2, z)^3 + z (sqrt2, z^2)^3 ],
    z = exp(2 pi i/3).  Returned as (weight, unit vector) pairs with the
    phases absorbed into the vectors.
    """
    z = ZETA
    raw = [(1.0, np.array([sqrt(2), 1.0])), (z * z, np.array([sqrt(2), z])), (z, np.array([sqrt(2), z * z]))]
    out = []
    for ph, v in raw:
        nrm = np.linalg.norm(v)
        # (1/(6 sqrt3)) ph v^3 = w u^3 with u = ph^{1/3} v / |v|, w = |v|^3 / (6 sqrt3)
        u = v / nrm * np.exp(1j * np.angle(ph) / 3)
        out.append((nrm**3 / (6 * sqrt(3)), u))
    return out


def dicke_state(d, k):
    if not 0 <= k <= d:
        raise ArgumentError(f"need 0 <= k <= d, got k={k}, d={d}")
    J = (d - k, k)
    S = SymTensor.from_dict(2, d, {J: 1 / sqrt(multinomial(J))}, "real")
    known = sp.Integer(1) if k in (0, d) else None
    return NamedState(f"dicke_{d}_{k}", S, known, known, f"symmetrized |0..01..1> with {k} ones, normalized")


def max4_candidate():
    S = SymTensor.from_dict(2, 4, {(4, 0): 1 / sqrt(3), (1, 3): 1 / sqrt(6)}, "real")
    return NamedState("max4", S, 1 / sp.sqrt(3), None,
                      "|0000>/sqrt3 + (|0111>+|1011>+|1101>+|1110>)/sqrt6; spectral 1/sqrt3")


def t_lambda(d, lam=1):
    """(lam u^{(x)d} + conj(lam) conj(u)^{(x)d})/sqrt 2 with u = (1, i)/sqrt 2."""
    lam = complex(lam)
    if abs(abs(lam) - 1) > 1e-12:
        raise ValidationError(f"lambda must have modulus one, got {lam}")
    if d < 1:
        raise ArgumentError("d must be >= 1")
    u = np.array([1, 1j]) / sqrt(2)
    S = _from_rank_one_sum(2, d, [(lam / sqrt(2), u), (np.conj(lam) / sqrt(2), np.conj(u))])
    if np.max(np.abs(S.coeffs.imag)) < 1e-15:
        S = SymTensor(2, d, S.coeffs.real, "real")
    label = "t_%d" % d if lam == 1 else f"t_{d}_{_lam_label(lam)}"
    return NamedState(label, S, 1 / sp.sqrt(2), sp.sqrt(2),
                      "symmetric qubit state with an SVD into two orthogonal product states",
                      {"real_spectral": sp.Integer(2) ** sp.Rational(1 - d, 2),
                       "real_nuclear": sp.Integer(2) ** sp.Rational(d - 1, 2)})


def _lam_label(lam):
    names = {1: "1", -1: "-1", 1j: "i", -1j: "-i"}
    for k, v in names.items():
        if abs(lam - k) < 1e-12:
            return v
    return f"{lam.real:.6g}{lam.imag:+.6g}i"


def ghz(d=3):
    S = SymTensor.from_dict(2, d, {(d, 0): 1 / sqrt(2), (0, d): 1 / sqrt(2)}, "real")
    return NamedState(f"ghz_{d}", S, 1 / sp.sqrt(2), sp.sqrt(2), "(|0..0> + |1..1>)/sqrt 2")


def _qubit_state(amps):
    d = len(next(iter(amps)))
    X = np.zeros((2,) * d, dtype=np.complex128)
    for bits, a in amps.items():
        X[tuple(int(b) for b in bits)] += a
    return DenseTensor(X)


def m4_state():
    z = np.exp(2j * pi / 3)
    s = 1 / sqrt(6)
    X = _qubit_state({"0011": s, "1100": s, "1010": z * s, "0101": z * s, "1001": z * z * s, "0110": z * z * s})
    return NamedState("m4", X, sp.sqrt(2) / 3, None, "four-qubit state with spectral norm sqrt2/3")


def m4_components():
    """The two three-qubit components W0, W1 (each with spectral norm 2/3)."""
    z = np.exp(2j * pi / 3)
    s = 1 / sqrt(3)
    W0 = _qubit_state({"110": s, "101": z * s, "011": z * z * s})
    W1 = _qubit_state({"001": s, "010": z * s, "100": z * z * s})
    return (NamedState("m4_w0", W0, sp.Rational(2, 3), None, "W-type component of M4"),
            NamedState("m4_w1", W1, sp.Rational(2, 3), None, "W-type component of M4"))


def bipartite_max_entangled(m, n):
    if not 2 <= m <= n:
        raise ArgumentError(f"need 2 <= m <= n, got m={m}, n={n}")
    X = np.zeros((m, n))
    X[np.arange(m), np.arange(m)] = 1 / sqrt(m)
    return NamedState(f"maxent_{m}x{n}", DenseTensor(X), 1 / sp.sqrt(m), sp.sqrt(m), "[I_m | 0]/sqrt m")


# ----------------------------------------------------------------------
# clique gadgets
# ----------------------------------------------------------------------
def _check_adjacency(A):
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError("adjacency must be square")
    if not np.all((A == 0) | (A == 1)):
        raise ValidationError("adjacency entries must be 0 or 1")
    if np.any(np.diag(A)) or np.any(A != A.T):
        raise ValidationError("adjacency must be symmetric with zero diagonal")
    return A.astype(int)


def clique_tensor(adjacency, power=1, kappa=None):
    """Real symmetric tensor of degree 4 power coding (sum_{i,j} a_ij x_i^2 x_j^2)^power.

    The tensor is not normalized; with the clique number kappa its spectral
    norm is (1 - 1/kappa)^power.
    """
    A = _check_adjacency(adjacency)
    n = A.shape[0]
    if power < 1:
        raise ArgumentError("power must be >= 1")
    terms = {}
    for i in range(n):
        for j in range(n):
            if A[i, j]:
                e = [0] * n
                e[i] += 2
                e[j] += 2
                terms[tuple(e)] = terms.get(tuple(e), 0) + 1
    d = 4 * power
    if not terms:
        S = SymTensor(n, d, np.zeros(comb(n + d - 1, d)), "real")
    else:
        S = SymTensor.from_polynomial(n, d, poly_pow(terms, power), "real")
    known = None if kappa is None else (1 - sp.Rational(1, kappa)) ** power
    if not terms:
        known = sp.Integer(0)
    return NamedState(f"clique_n{n}_p{power}", S, known, None, "Motzkin-Straus quartic", {"kappa": kappa})


def clique_density(adjacency, kappa=None):
    """Bi-symmetric density 4/(n^2(n^2-1)) (n(n-1)/2 P_sym + G), G = sum_{i~j} |ii><jj|.

    With clique number kappa its b-spectral norm is
    4/(n^2(n^2-1)) (n(n-1)/2 + 1 - 1/kappa).
    """
    A = _check_adjacency(adjacency)
    n = A.shape[0]
    if n < 2:
        raise ArgumentError("need at least two vertices")
    G = np.zeros((n * n, n * n))
    for i in range(n):
        for j in range(n):
            if A[i, j]:
                G[i * n + i, j * n + j] = 1.0
    P = identity_on_sym(n, 2).matrix.real
    M = 4.0 / (n * n * (n * n - 1)) * (n * (n - 1) / 2 * P + G)
    R = DensityTensor(HermitianTensor((n, n), M, "bisymmetric"))
    known = None
    if kappa is not None:
        known = sp.Rational(4, n * n * (n * n - 1)) * (sp.Rational(n * (n - 1), 2) + 1 - sp.Rational(1, kappa))
    return NamedState(f"clique_density_n{n}", R, known, None, "bi-symmetric clique density", {"kappa": kappa})


def complete_graph(n):
    return np.ones((n, n), dtype=int) - np.eye(n, dtype=int)


def cycle_graph(n):
    A = np.zeros((n, n), dtype=int)
    for i in range(n):
        A[i, (i + 1) % n] = A[(i + 1) % n, i] = 1
    return A


# ----------------------------------------------------------------------
# isotropic moments
# ----------------------------------------------------------------------
def sphere_moment(exponents):
    """E[prod x_i^{j_i}] for x uniform on the unit sphere of R^n (exact sympy value)."""
    j = [int(t) for t in exponents]
    if any(t % 2 for t in j):
        return sp.Integer(0)
    n, k = len(j), [t // 2 for t in j]
    half = sp.Rational(1, 2)
    num = sp.gamma(sp.Rational(n, 2)) * sp.prod([sp.gamma(t + half) for t in k])
    den = sp.gamma(sp.Rational(n, 2) + sum(k)) * sp.gamma(half) ** n
    return sp.nsimplify(sp.simplify(num / den))


def isotropic_moment_poly(n, d):
    """R* as a real SymTensor of degree 2d: coefficients E[x^j]."""
    J, _, _ = monomial_table(2 * d, n)
    return SymTensor(n, 2 * d, [float(sphere_moment(j)) for j in J], "real")


def isotropic_moment_tensor(n, d):
    """R* = E[x^{(x)2d}] over the unit sphere of R^n, as a real symmetric operator on (R^n)^{(x)d}."""
    if n < 1 or d < 1:
        raise ArgumentError("need n, d >= 1")
    return from_realsym_poly(isotropic_moment_poly(n, d), d)


def isotropic_spectral_value(n, d):
    """max_x E[(x.y)^{2d}] = E[y_1^{2d}] = Gamma(n/2) Gamma(d + 1/2) / (Gamma(n/2 + d) Gamma(1/2))."""
    return sp.gamma(sp.Rational(n, 2)) * sp.gamma(d + sp.Rational(1, 2)) / (
        sp.gamma(sp.Rational(n, 2) + d) * sp.gamma(sp.Rational(1, 2)))


def isotropic_constant_gamma32(n, d):
    """Closed form (d-1)!/(2 prod_{k<d} (n/2 + k)), the Gamma(3/2) variant; not the sphere integral for d >= 2."""
    return sp.factorial(d - 1) / (2 * sp.prod([sp.Rational(n, 2) + k for k in range(d)]))


def monte_carlo_moments(n, d, samples=10**6, seed=0):
    """Monte Carlo estimate of E[x^j] for every exponent j of degree 2d."""
    rng = np.random.default_rng(seed)
    J, _, _ = monomial_table(2 * d, n)
    acc = np.zeros(len(J))
    done = 0
    while done < samples:
        k = min(200_000, samples - done)
        x = rng.normal(size=(k, n))
        x /= np.linalg.norm(x, axis=1, keepdims=True)
        acc += monomials(x, 2 * d).sum(axis=0)
        done += k
    return J, acc / samples


# ----------------------------------------------------------------------
# registry
# ----------------------------------------------------------------------
def _registry():
    return {
        "w": w_state,
        "ghz": lambda: ghz(3),
        "t3": lambda: t_lambda(3, 1),
        "t4": lambda: t_lambda(4, 1),
        "t4_-i": lambda: t_lambda(4, -1j),
        "t5": lambda: t_lambda(5, 1),
        "m4": m4_state,
        "max4": max4_candidate,
        "dicke_4_2": lambda: dicke_state(4, 2),
        "bell": lambda: bipartite_max_entangled(2, 2),
        "k3": lambda: clique_tensor(complete_graph(3), 1, 3),
        "k3_density": lambda: clique_density(complete_graph(3), 3),
    }


def list_states():
    return sorted(_registry())


def get_state(label):
    reg = _registry()
    if label not in reg:
        raise ArgumentError(f"unknown state {label!r}; known: {', '.join(sorted(reg))}")
    return reg[label]()
