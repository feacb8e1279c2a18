"""Two exact statements in physical variables.

The energy-type norm of the self-similar solution on the backward light cone
grows like ``(T - t)^{-1/2}``. Free waves conserve the energy of
``r phi_r + 2 phi``, which obeys the one-dimensional wave equation.
"""

import numpy as np

from wmblowup import Profile, blowup_scaling_report, free_wave_check, make_grid
from wmblowup.diagnostics import blowup_constant

for row in blowup_scaling_report(1.0, [0.0, 0.9, 0.99, 0.999]):
    print(f"t={row.t:<6} T-t={row.T_minus_t:.0e}  norm={row.norm_E:12.6f}  (T-t)^1/2 norm={row.c_t:.12f}")
print("quadrature value of the constant:", f"{blowup_constant():.12f}")

G = make_grid(160, 0.0, 20.0)
r = G.nodes
f0 = Profile(G, np.exp(-(((r - 6) / 0.7) ** 2)))
f1 = Profile(G, (r - 7) * np.exp(-(((r - 7) / 0.8) ** 2)))
for t in (0.0, 3.0, 6.5):
    e0, et = free_wave_check(f0, f1, t)
    print(f"t={t}: energy {et:.15f} (drift {et - e0:+.1e})")
