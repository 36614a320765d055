"""Two real symmetric tensors with closed-form spectral norms.

The quartic sum_{i~j} x_i^2 x_j^2 of a graph has maximum 1 - 1/kappa on the
unit sphere, kappa the clique number.  The sphere moment tensor
E[x^{(x)4}] has maximum E[x_1^4] = 3/8 in two variables.

    python demos/cliques_and_moments.py
"""

import numpy as np

from entanglib import state_library as lib
from entanglib.hermitian_tensors import to_realsym_poly
from entanglib.optim_engine import spectral_norm
from entanglib.separability import real_strong_separability_sym

graphs = [("K2", lib.complete_graph(2), 2, None), ("K3", lib.complete_graph(3), 3, None),
          ("K4", lib.complete_graph(4), 4, None), ("C5", lib.cycle_graph(5), 2, 7)]
for name, A, kappa, m in graphs:
    est = spectral_norm(lib.clique_tensor(A).tensor, 0.3, m=m, field="real")
    print(f"{name}: bracket [{est.lower:.6f}, {est.upper:.4f}], 1 - 1/kappa = {1 - 1 / kappa:.6f}")

R = lib.isotropic_moment_tensor(2, 2)
P = to_realsym_poly(R)
print("\nmoments E[x^j], j = (4,0) .. (0,4):", np.round(P.coeffs, 6))
J, mc = lib.monte_carlo_moments(2, 2, samples=200_000, seed=1)
print("Monte Carlo:                      ", np.round(mc, 4))
est = spectral_norm(P, 0.3, field="real")
print(f"real spectral norm {est.lower:.8f} (3/8 = 0.375)")
print("isotropic_constant_gamma32(2, 2):", float(lib.isotropic_constant_gamma32(2, 2)), "(not the sphere integral)")
v = real_strong_separability_sym(R)
print(f"moment density is {v.status}: nuclear bracket {np.round(v.nuclear_bracket, 6)}")
