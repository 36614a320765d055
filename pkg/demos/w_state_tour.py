"""How entangled is the W state?

We bracket its spectral norm on a covering net, sharpen the lower end by
local ascent, and compare with the exact three-term decomposition whose
weights add up to its nuclear norm.

    python demos/w_state_tour.py
"""

import numpy as np

from entanglib import state_library as lib
from entanglib.entanglement_measures import alpha_lower_bound, gme
from entanglib.sym_poly import monomials

W = lib.w_state().tensor
print("W as a symmetric tensor:", W.to_json()["coeffs"])

rep = gme(W, epsilon=0.3, m=9, nuclear=True)
spec, nuc = rep.spectral, rep.nuclear
print(f"spectral norm in [{spec.lower:.8f}, {spec.upper:.4f}]  (exact 2/3, net {spec.net})")
print(f"nuclear norm  in [{nuc.lower:.6f}, {nuc.upper:.8f}]  (exact 3/2, {len(nuc.decomposition)} terms)")
print(f"geometric measure in [{rep.gme_bracket[0]:.6f}, {rep.gme_bracket[1]:.6f}]")

# the best product state found by the ascent
x = spec.witness[0]
print("witness x (x) x (x) x with |x1|, |x2| =", np.round(np.abs(x), 6))

# the exact decomposition with cube roots of unity
terms = lib.w_zeta_decomposition()
recon = sum(w * monomials(u, 3) for w, u in terms)
print("zeta decomposition: weights", [round(w, 6) for w, _ in terms],
      "sum", sum(w for w, _ in terms), "max error", np.abs(recon - W.coeffs).max())

# W sits on the smallest possible spectral norm for three qubits
print("lower bound over all three-qubit states:", alpha_lower_bound((2, 2, 2)))
