"""Shooting on the blow-up time.

Perturbed data blow up at a time ``T*`` near 1. Evolving with the wrong
``T`` excites the gauge mode, which then grows like ``e^tau``. ``tune_T``
adjusts ``T`` until that growth is switched off.
"""

import numpy as np

from wmblowup import fit_decay_rate, make_grid, tune_T
from wmblowup.evolution import bump_data, selfsimilar_data

grid = make_grid(32, 0.0, 1.0)

# %% exact oracle: data of the self-similar solution that blows up at 1.05
res = tune_T(selfsimilar_data(1.05), tau_f=10.0, grid=grid)
print(f"oracle: T* = {res.T_star!r} after {res.iterations} iterations")
print("largest norm along the tuned run:", max(res.trace.norm_H))

# %% a small generic perturbation
res = tune_T(bump_data(1e-3), tau_f=10.0, grid=grid)
fit = fit_decay_rate(res.trace)
print(f"bump: T* = {res.T_star:.12f}, decay rate {fit.omega_hat:.5f}")
for T, c in sorted(res.evaluations.items())[:6]:
    print(f"  c({T:.6f}) = {c:+.3e}")
