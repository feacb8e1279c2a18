"""Numerics for stable self-similar blow-up of co-rotational wave maps.

Modules
-------
closed_forms
    Ground state, potentials, gauge mode and the nonlinearity.
spectral_grid
    Chebyshev-Lobatto grids, interpolation, quadrature, the averaging operator.
mode_stability
    The quadratic eigenproblem, spurious-mode filtering, the generator ``L``
    and its gauge projector.
evolution
    Similarity-coordinate evolution, initial data maps, shooting on ``T``.
diagnostics
    Norms, decay-rate fits and blow-up scaling.
"""

from .closed_forms import (
    f0_jet,
    gauge_mode,
    gauge_mode_scalar,
    nonlinearity_N,
    nonlinearity_dN,
    potential_V,
    potential_V1,
    psiT_jet,
)
from .spectral_grid import Grid, Profile, apply_A, interpolate, make_grid, resample
from .mode_stability import (
    Region,
    assemble_L,
    assemble_pencil,
    eigen_residual,
    filter_spectrum,
    gauge_projection,
    mode_stability_report,
    solve_qep,
)
from .evolution import (
    EvolutionTrace,
    PerturbationData,
    State,
    cfl_dt,
    evolve,
    free_wave_check,
    gauge_coefficient,
    initial_data_U,
    initial_data_v,
    reconstruct_psi,
    rhs,
    rk4_step,
    tune_T,
)
from .diagnostics import (
    RateFit,
    blowup_scaling_report,
    fit_decay_rate,
    norm_E,
    norm_Eprime,
    theorem_rate_check,
    y_norm,
)
from .config import RunConfig

__version__ = "0.1.0"
