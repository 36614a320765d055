"""Entanglement of pure states from spectral and nuclear norm brackets.

gme = sqrt(2 (1 - ||X||_inf)) is the distance to the product states; it is
decreasing in the spectral norm, so bracket ends swap.  The logarithmic
quantities are -2 log ||X||_inf and 2 log ||X||_1.
"""

from dataclasses import dataclass, field
from math import comb, log, sqrt

import numpy as np

from .errors import ArgumentError, ValidationError
from .optim_engine import nuclear_norm, spectral_norm
from .sym_poly import SymTensor
from .tensor_core import as_tensor

NORM_TOL = 1e-10


@dataclass
class EntanglementReport:
    gme_bracket: tuple
    log_spec: tuple
    nuclear_energy: tuple = None
    state_norm: float = 1.0
    spectral: object = None
    nuclear: object = None
    notes: list = field(default_factory=list)

    def to_json(self):
        out = {
            "gme": list(self.gme_bracket),
            "log_spec": list(self.log_spec),
            "state_norm": self.state_norm,
            "spectral": self.spectral.to_json() if self.spectral is not None else None,
        }
        if self.nuclear_energy is not None:
            out["nuclear_energy"] = list(self.nuclear_energy)
            out["nuclear"] = self.nuclear.to_json()
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _as_state(state, field=None):
    """SymTensor for symmetric input (Banach restriction), else a DenseTensor."""
    field = field or "complex"
    if hasattr(state, "tensor"):
        state = state.tensor
    if isinstance(state, SymTensor):
        return state.with_field(field), state.norm()
    X = as_tensor(state)
    if X.d >= 2 and all(n == X.shape[0] for n in X.shape):
        try:
            return SymTensor.from_dense(X, field=field), X.norm()
        except ValidationError:
            pass
    return X, X.norm()


def _check_unit(nrm):
    if abs(nrm - 1.0) > NORM_TOL:
        raise ValidationError(f"state must have unit norm, got {nrm!r}")


def gme_from_spectral(lower, upper):
    return (sqrt(2.0 * max(0.0, 1.0 - min(upper, 1.0))), sqrt(2.0 * max(0.0, 1.0 - lower)))


def _log2(v):
    return 2.0 * log(v) if v > 0 else float("-inf")


def gme(state, epsilon=0.3, m=None, budget=None, field=None, nuclear=False, net="auto"):
    """EntanglementReport of a unit state; ``nuclear=True`` adds the creation-energy bracket."""
    T, nrm = _as_state(state, field)
    _check_unit(nrm)
    kw = {"m": m, "net": net} if isinstance(T, SymTensor) else {}
    est = spectral_norm(T, epsilon, budget=budget, field=field, **kw)
    rep = EntanglementReport(gme_from_spectral(est.lower, est.upper),
                             (-_log2(est.upper), -_log2(est.lower)), None, nrm, est)
    if nuclear:
        nuc, _ = nuclear_norm(T, epsilon, budget=budget, field=field, **kw)
        rep.nuclear = nuc
        rep.nuclear_energy = (_log2(nuc.lower), _log2(nuc.upper))
    return rep


def nuclear_energy(state, epsilon=0.3, m=None, budget=None, field=None):
    """Bracket for 2 log ||state||_1."""
    T, nrm = _as_state(state, field)
    _check_unit(nrm)
    kw = {"m": m} if isinstance(T, SymTensor) else {}
    est, _ = nuclear_norm(T, epsilon, budget=budget, field=field, **kw)
    return (_log2(est.lower), _log2(est.upper))


def alpha_lower_bound(shape, field="complex"):
    """Best closed-form lower bound on the minimal spectral norm of unit tensors of this shape."""
    dims = sorted(int(n) for n in shape)
    if len(dims) < 2:
        raise ArgumentError("need d >= 2")
    if field not in ("real", "complex"):
        raise ArgumentError("field must be 'real' or 'complex'")
    bound = 1.0 / sqrt(float(np.prod(dims[:-1])))
    d = len(dims)
    if field == "complex" and d >= 3 and all(n == 2 for n in dims):
        bound = max(bound, (2.0 / 3.0) * 2.0 ** (-(d - 3) / 2.0))
    return bound


def _symmetric_candidates(n, d):
    from . import state_library as lib

    out = []
    if n == 2:
        out += [lib.dicke_state(d, k).tensor for k in range(d // 2 + 1)]
        out += [lib.t_lambda(d).tensor, lib.ghz(d).tensor]
        if d == 4:
            out.append(lib.max4_candidate().tensor)
    if d == 2:
        out.append(SymTensor(n, 2, np.eye(n)[np.triu_indices(n)] / sqrt(n), "real"))
    return out


def symmetric_alpha_bounds(n, d, epsilon=0.3, budget=None):
    """(lower, upper) for the minimal spectral norm over unit symmetric tensors in S^d(C^n)."""
    if n < 2 or d < 2:
        raise ArgumentError("need n, d >= 2")
    lower = 1.0 / sqrt(comb(n + d - 1, d))
    upper = 1.0
    net = "bloch" if n == 2 else "auto"
    for S in _symmetric_candidates(n, d):
        if d == 2:
            # symmetric and general spectral norms agree for matrices
            est = spectral_norm(S.to_dense(), epsilon, budget=budget)
        else:
            est = spectral_norm(S.with_field("complex"), epsilon, net=net, budget=budget)
        upper = min(upper, est.upper)
    return lower, upper
