"""Spectrum of the linearised problem around the ground state.

Collocation of a non-normal operator produces eigenvalues that move when the
grid changes. Only eigenvalues that survive a change of resolution, with a
small pencil residual, are kept.
"""

import numpy as np

from wmblowup import mode_stability_report
from wmblowup.mode_stability import generator_eigenvalues, qep_spectrum
from wmblowup.spectral_grid import make_grid

# %% raw spectra at two resolutions
for n in (32, 48):
    spec = qep_spectrum(n)
    lams = spec.eigenvalues
    window = lams[(lams.real > -1) & (np.abs(lams.imag) < 10)]
    print(f"n={n}: {len(spec)} finite eigenvalues ({spec.n_infinite} infinite), {len(window)} in the window")

# %% filtered spectrum
rep = mode_stability_report([32, 48, 64])
print(rep.summary())
for p in rep.converged:
    print(f"  lambda = {p.lam.real:+.12f} {p.lam.imag:+.2e}i   residual {p.residual:.1e}")
print("gauge eigenfunction vs rho/(1+rho^2):", f"{rep.gauge_eigenfunction_error:.1e}")

# %% the same numbers from the first-order generator
lams = generator_eigenvalues(make_grid(48, 0, 1))[0]
for p in rep.converged:
    print(f"  generator partner of {p.lam.real:+.8f}: distance {np.min(np.abs(lams - p.lam)):.1e}")
