"""Deciding separability of two-qubit densities.

A density is separable exactly when its nuclear norm over product states is
one.  The linear program either returns a decomposition into product states
(a certificate) or a dual operator that separates the density from them (a
witness).  For 2x2 systems the partial transpose test must agree.

    python demos/separability_tour.py
"""

import numpy as np

from entanglib.hermitian_tensors import HermitianTensor
from entanglib.separability import separability_via_nuclear

bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
P = np.outer(bell, bell)

# Werner-type family: p |bell><bell| + (1 - p) I/4 is entangled iff p > 1/3
for p in (0.0, 0.2, 0.3, 0.4, 0.7, 1.0):
    R = HermitianTensor((2, 2), p * P + (1 - p) * np.eye(4) / 4)
    v = separability_via_nuclear(R, epsilon=0.3)
    lo, hi = v.nuclear_bracket
    print(f"p = {p:.1f}: {v.status:<12} nuclear in [{lo:.4f}, {hi:.4f}]  ppt {v.ppt}")

v = separability_via_nuclear(HermitianTensor((2, 2), np.eye(4) / 4))
print(f"\nI/4 certificate has {len(v.certificate)} product terms; residual {v.residual:.1e}")
for w, (a, b), _ in v.certificate.terms[:4]:
    print(f"  weight {w:.4f}  |a| = {np.round(np.abs(a), 3)}  |b| = {np.round(np.abs(b), 3)}")

v = separability_via_nuclear(HermitianTensor((2, 2), P))
print(f"\nBell witness eigenvalues: {np.round(np.linalg.eigvalsh(v.witness), 4)}")
