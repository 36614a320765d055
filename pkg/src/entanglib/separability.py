"""Separability certificates for density tensors.

Two routes: the partial-transpose test (a failure certifies entanglement)
and nuclear norms, which equal 1 exactly on the separable set.  A nuclear
computation certifies separability through its decomposition (positive
weights reconstructing the density) and entanglement through its dual
lower bound.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetError, ValidationError
from .hermitian_tensors import _has_structure, as_hermitian, bisym_coefficients, partial_transpose, to_realsym_poly
from .optim_engine import bnuc, bspec, hermitian_spectral, nuclear_norm, product_nuclear
from .sym_poly import sym_dim

SEPARABLE, ENTANGLED, INCONCLUSIVE = "separable", "entangled", "inconclusive"
RESIDUAL_TOL = 1e-6


@dataclass
class SeparabilityVerdict:
    status: str
    nuclear_bracket: tuple
    margin: float
    certificate: object = None
    ppt: bool = None
    ppt_modes: list = None
    witness: object = None
    nuclear_status: str = None
    residual: float = None
    notes: list = field(default_factory=list)

    def to_json(self):
        out = {
            "status": self.status,
            "nuclear_status": self.nuclear_status,
            "nuclear_bracket": list(self.nuclear_bracket) if self.nuclear_bracket else None,
            "margin": self.margin,
            "ppt": self.ppt,
            "ppt_modes": self.ppt_modes,
            "residual": self.residual,
        }
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        if self.witness is not None:
            W = np.asarray(self.witness)
            out["witness"] = [[[float(z.real), float(z.imag)] for z in row] for row in W]
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _check_density(R, tol=1e-8):
    B = as_hermitian(R)
    tr = float(np.trace(B.matrix).real)
    if abs(tr - 1.0) > tol:
        raise ValidationError(f"density must have trace 1, got {tr!r}")
    lam = np.linalg.eigvalsh(B.matrix).min()
    if lam < -tol:
        raise ValidationError(f"density must be positive semidefinite (smallest eigenvalue {lam:.3g})")
    return B


def ppt_check(R, tol=1e-10):
    """(overall, per-mode flags): mode k passes when the partial transpose on k is PSD."""
    B = as_hermitian(R)
    flags = []
    for k in range(B.d):
        lam = float(np.linalg.eigvalsh(partial_transpose(B, k).matrix).min())
        flags.append(bool(lam >= -tol))
    return all(flags), flags


def _decide(est, dec, residual_of, eps_decision, ppt=None, ppt_modes=None):
    """Status from the bracket; separability is judged on the positive part of the decomposition."""
    eps = est.width if eps_decision is None else float(eps_decision)
    dec = dec.positive_part() if dec is not None else None
    residual = float(residual_of(dec)) if dec is not None and len(dec) else float("inf")
    total = dec.total if dec is not None else 0.0
    if dec is not None and len(dec) and residual <= RESIDUAL_TOL \
            and abs(total - 1.0) <= RESIDUAL_TOL and est.upper <= 1.0 + eps + 1e-9:
        status = SEPARABLE
    elif est.lower > 1.0 + eps:
        status = ENTANGLED
    else:
        status = INCONCLUSIVE
    v = SeparabilityVerdict(status, (est.lower, est.upper), est.lower - 1.0,
                            dec if status == SEPARABLE else None, ppt, ppt_modes, None, status, residual)
    if status == ENTANGLED:
        v.witness = getattr(est, "_dual", None)
    v.notes.append(f"decision tolerance {eps:.3g}")
    return v


def _with_ppt(v):
    if v.status == INCONCLUSIVE and v.ppt is False:
        v.status = ENTANGLED
        v.notes.append("entangled by partial transpose; nuclear bracket undecided")
    return v


def separability_via_nuclear(R, epsilon=0.3, eps_decision=None, budget=None):
    """Verdict for a density over product pure states of its shape."""
    B = _check_density(R)
    ppt, modes = ppt_check(B)
    try:
        est, dec = product_nuclear(B, epsilon, budget=budget)
    except BudgetError as exc:
        v = SeparabilityVerdict(INCONCLUSIVE, None, float("nan"), None, ppt, modes, None, INCONCLUSIVE)
        v.notes.append(str(exc))
        return _with_ppt(v)
    return _with_ppt(_decide(est, dec, lambda D: np.max(np.abs(D.product_density() - B.matrix)),
                             eps_decision, ppt, modes))


def strong_separability_bisym(R, epsilon=0.3, m=None, eps_decision=None, budget=None):
    """Verdict for a bi-symmetric density over the states x^{(x)d} (x) conj(x)^{(x)d}."""
    B = _check_density(R)
    if not _has_structure(B, "bisymmetric"):
        raise ValidationError("strong separability needs a bi-symmetric density")
    est, dec = bnuc(B, epsilon, m=m, budget=budget)
    Bs = bisym_coefficients(B)
    ppt, modes = ppt_check(B)
    return _with_ppt(_decide(est, dec, lambda D: np.max(np.abs(D.dicke_matrix(Bs.n) - Bs.dicke_matrix())),
                             eps_decision, ppt, modes))


def real_strong_separability_sym(R, epsilon=0.3, m=None, eps_decision=None, budget=None):
    """Verdict for a real fully symmetric density over real states x^{(x)2d}.

    The density is read as a real symmetric tensor P of degree 2d.  Its real
    nuclear norm is at least the trace, since (x.x)^d has sup 1 on the sphere.
    """
    B = _check_density(R)
    if not _has_structure(B, "realsymmetric"):
        raise ValidationError("real strong separability needs a real fully symmetric density")
    P = to_realsym_poly(B)
    est, dec = nuclear_norm(P, epsilon, m=m, budget=budget)
    tr = float(np.trace(B.matrix).real)
    if tr > est.lower:
        est.lower = min(tr, est.upper)
        est.notes.append("lower end raised to the trace")
    ppt, modes = ppt_check(B)
    return _with_ppt(_decide(est, dec, lambda D: np.max(np.abs(D.symmetric_coefficients(P.n, P.d) - P.coeffs)),
                             eps_decision, ppt, modes))


def spec_floor(R, norm="spec"):
    B = as_hermitian(R)
    if norm == "bspec":
        return 1.0 / sym_dim(B.shape[0], B.d)
    return 1.0 / B.N


def spec_floor_check(R, epsilon=0.3, norm="spec", slack=1e-9, budget=None):
    """(holds, estimate, floor): the certified upper end is at least 1/N (1/C(n+d-1, d) for bspec)."""
    B = _check_density(R)
    est = bspec(B, epsilon, budget=budget) if norm == "bspec" else hermitian_spectral(B, epsilon, budget=budget)
    floor = spec_floor(B, norm)
    return bool(est.upper >= floor - slack), est, floor
