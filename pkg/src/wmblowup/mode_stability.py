"""Mode stability of the ground state.

Two discretisations of the same spectral problem live here:

* the scalar quadratic eigenvalue problem in ``u(rho)``, solved through a
  companion linearisation and a dense QZ solve, and
* the first-order generator ``L`` acting on stacked ``(phi1, phi2)``
  samples, which is also what the time evolution integrates.

Collocation of these non-normal operators produces spurious eigenvalues,
so an eigenvalue only counts as converged if it reappears at a second
resolution and has a small pencil residual.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import scipy.linalg as sla

from . import _io
from .closed_forms import gauge_mode, gauge_mode_scalar, potential_V, potential_V1
from .spectral_grid import Profile, averaging_matrix, make_grid

RESIDUAL_TOL = 1e-7
MATCH_TOL = 1e-6
INFINITE_CUTOFF = 1e8


class SolverError(RuntimeError):
    """A dense eigensolve failed; ``n`` is the offending resolution."""

    def __init__(self, message, n=None):
        super().__init__(message if n is None else f"n={n}: {message}")
        self.n = n


@dataclass(frozen=True)
class Region:
    """Rectangular search window in the complex plane."""

    re_min: float = -1.0
    re_max: float = 2.0
    im_max: float = 10.0

    def contains(self, lam):
        return self.re_min <= lam.real <= self.re_max and abs(lam.imag) <= self.im_max


@dataclass(frozen=True)
class EigenPair:
    lam: complex
    u: Profile
    residual: float
    converged: bool = False


@dataclass(frozen=True)
class Spectrum:
    pairs: tuple
    grid_size: int
    n_infinite: int = 0

    @property
    def eigenvalues(self):
        return np.array([p.lam for p in self.pairs], dtype=complex)

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


def _sorted_pairs(pairs):
    # descending real part, ties broken by ascending imaginary part
    return tuple(sorted(pairs, key=lambda p: (-p.lam.real, p.lam.imag)))


def _check_unit_interval(grid):
    if grid.a != 0.0 or grid.b != 1.0:
        raise ValueError(f"expected a grid on [0, 1], got [{grid.a}, {grid.b}]")


def assemble_pencil(grid):
    """Collocation matrices ``(A0, A1, A2)`` of the quadratic eigenproblem.

    ``(A2 lam^2 + A1 lam + A0) u = 0`` discretises

        -(1-rho^2) u'' - 2 (1-rho^2)/rho u' + 2 lam rho u' + lam (lam+1) u
        + V(rho)/rho^2 u = 0.

    The origin row is replaced by ``u(0) = 0``, which picks the regular
    branch ``u ~ rho`` over ``u ~ rho^-2``. At ``rho = 1`` the equation
    degenerates to ``2 lam u'(1) + (lam^2 + lam - 2) u(1) = 0`` and that
    row is used as is; it is what enforces smoothness at the light cone.
    """
    _check_unit_interval(grid)
    r = grid.nodes
    D, D2 = grid.D, grid.D2
    n = grid.n
    eye = np.eye(n)
    A0 = np.empty((n, n))
    A1 = np.empty((n, n))
    inner = slice(1, n - 1)
    ri = r[inner, None]
    A0[inner] = (
        -(1.0 - ri**2) * D2[inner]
        - 2.0 * (1.0 - ri**2) / ri * D[inner]
        + np.diag(potential_V(r) / np.where(r == 0.0, 1.0, r) ** 2)[inner]
    )
    A1[inner] = 2.0 * ri * D[inner] + eye[inner]
    A2 = eye.copy()

    A0[0] = eye[0]
    A1[0] = 0.0
    A2[0] = 0.0

    A0[-1] = potential_V(1.0) * eye[-1]
    A1[-1] = 2.0 * D[-1] + eye[-1]
    return A0, A1, A2


def eigen_residual(lam, u, pencil):
    """Relative infinity-norm residual ``|(A2 l^2 + A1 l + A0) u| / |u|``."""
    A0, A1, A2 = pencil
    vals = u.values if isinstance(u, Profile) else np.asarray(u)
    scale = np.max(np.abs(vals))
    if scale == 0.0:
        raise ValueError("residual of the zero vector is undefined")
    r = (lam * lam) * (A2 @ vals) + lam * (A1 @ vals) + A0 @ vals
    return float(np.max(np.abs(r)) / scale)


def _normalise(vec):
    k = int(np.argmax(np.abs(vec)))
    return vec / vec[k]


def solve_qep(A0, A1, A2, grid=None):
    """Solve the quadratic eigenproblem by companion linearisation.

    The ``2n x 2n`` pencil ``[[0, I], [-A0, -A1]] - lam [[I, 0], [0, A2]]``
    is handed to a dense QZ solve. Infinite eigenvalues (from the Dirichlet
    row) are dropped and counted.
    """
    n = A0.shape[0]
    if not (A0.shape == A1.shape == A2.shape == (n, n)):
        raise ValueError("pencil matrices must be square and of equal size")
    if grid is None:
        grid = make_grid(n, 0.0, 1.0)
    Z = np.zeros((n, n))
    eye = np.eye(n)
    A = np.block([[Z, eye], [-A0, -A1]])
    B = np.block([[eye, Z], [Z, A2]])
    try:
        (alpha, beta), vecs = sla.eig(A, B, right=True, homogeneous_eigvals=True)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"QZ iteration failed: {exc}", n) from exc
    finite = np.abs(beta) > np.abs(alpha) / INFINITE_CUTOFF
    pairs = []
    with np.errstate(divide="ignore", invalid="ignore"):
        lams = alpha / beta
    for k in np.flatnonzero(finite):
        lam = complex(lams[k])
        if not np.isfinite(lam):
            continue
        u = _normalise(vecs[:n, k])
        if not np.all(np.isfinite(u)):
            continue
        res = eigen_residual(lam, u, (A0, A1, A2))
        pairs.append(EigenPair(lam, Profile(grid, u, 1), res))
    return Spectrum(_sorted_pairs(pairs), n, n_infinite=2 * n - len(pairs))


def qep_spectrum(n):
    grid = make_grid(n, 0.0, 1.0)
    return solve_qep(*assemble_pencil(grid), grid=grid)


def filter_spectrum(s_lo, s_hi, match_tol=MATCH_TOL, residual_tol=RESIDUAL_TOL):
    """Keep eigenvalues of ``s_hi`` confirmed by ``s_lo`` and by their residual."""
    lo = s_lo.eigenvalues
    kept = []
    for p in s_hi.pairs:
        if p.residual >= residual_tol or lo.size == 0:
            continue
        if np.min(np.abs(lo - p.lam)) < match_tol:
            kept.append(EigenPair(p.lam, p.u, p.residual, converged=True))
    return Spectrum(_sorted_pairs(kept), s_hi.grid_size, s_hi.n_infinite)


# ---------------------------------------------------------------------------
# first-order generator


def _origin_rows(n):
    return (0, n)


@lru_cache(maxsize=32)
def _generator(grid):
    _check_unit_interval(grid)
    n = grid.n
    r = grid.nodes
    D, D2 = grid.D, grid.D2
    eye = np.eye(n)
    rc = r[:, None]
    # V1 * int_0^rho s u2 = V1 * rho^2 * (A u2)
    integral = grid.Antider * r[None, :]
    L11 = -rc * D + eye
    L12 = rc * D - eye - potential_V1(r)[:, None] * integral
    L21 = np.empty((n, n))
    L21[1:] = D[1:] / rc[1:]
    L21[0] = D2[0]  # limit of u1'/rho when u1'(0) = 0
    L22 = -rc * D
    L = np.block([[L11, L12], [L21, L22]])
    # the origin values are pinned to zero: their time derivative vanishes
    L[list(_origin_rows(n))] = 0.0
    L.setflags(write=False)
    return L


def assemble_L(grid):
    """Dense matrix of the linearised first-order generator on ``[phi1; phi2]``."""
    return np.array(_generator(grid))


def free_indices(n):
    """Stacked indices that are not pinned by the origin conditions."""
    mask = np.ones(2 * n, dtype=bool)
    mask[list(_origin_rows(n))] = False
    return np.flatnonzero(mask)


def generator_eigenvalues(grid):
    """Eigenvalues of ``L`` restricted to the unpinned unknowns, with residuals.

    Residuals are ``|L v - lam v|_inf / (|v|_inf |L|_inf)``.
    """
    L = _generator(grid)
    idx = free_indices(grid.n)
    Lr = L[np.ix_(idx, idx)]
    try:
        lams, vecs = sla.eig(Lr)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"eigensolve of L failed: {exc}", grid.n) from exc
    scale = np.max(np.sum(np.abs(Lr), axis=1))
    res = np.max(np.abs(Lr @ vecs - vecs * lams), axis=0) / (
        np.max(np.abs(vecs), axis=0) * scale
    )
    order = np.lexsort((lams.imag, -lams.real))
    full = np.zeros((2 * grid.n, len(lams)), dtype=complex)
    full[idx] = vecs[:, order]
    return lams[order], res[order], full


@dataclass(frozen=True)
class GaugeProjector:
    """Rank-one spectral projector of ``L`` onto its eigenvalue near 1.

    ``right`` is scaled to match the analytic gauge mode and
    ``left . right = 1``, so ``coefficient(u)`` is the gauge-mode
    coordinate of ``u``.
    """

    right: np.ndarray
    left: np.ndarray
    eigenvalue: float
    normalization: float = field(default=1.0)

    def coefficient(self, u):
        return float(self.left @ u)

    def apply(self, u):
        return (self.left @ u) * self.right

    def complement(self, u):
        return u - self.apply(u)


def gauge_projection(L, grid=None, tol=1e-6):
    """Build the discrete gauge projector from left/right eigenvectors of ``L``.

    The pinned origin unknowns are excluded from the eigensolve; the left
    vector's pinned entries are then recovered so that it is a left
    eigenvector of the full matrix.
    """
    L = np.asarray(L)
    if L.ndim != 2 or L.shape[0] != L.shape[1] or L.shape[0] % 2:
        raise ValueError("expected a square generator of even size")
    n = L.shape[0] // 2
    if grid is None:
        grid = make_grid(n, 0.0, 1.0)
    elif grid.n != n:
        raise ValueError("generator and grid sizes disagree")
    idx = free_indices(n)
    Lr = L[np.ix_(idx, idx)]
    lams, vl, vr = sla.eig(Lr, left=True, right=True)
    near = np.flatnonzero(np.abs(lams - 1.0) < tol)
    if near.size == 0:
        raise SolverError("no eigenvalue within tolerance of 1", n)
    if near.size > 1:
        raise SolverError("eigenvalue 1 is numerically multiple", n)
    k = int(near[0])
    lam = lams[k].real
    right = np.zeros(2 * n)
    right[idx] = vr[:, k].real
    j = int(np.argmin(np.abs(grid.nodes - 0.5)))
    g2 = gauge_mode(grid.nodes[j]).g2
    right *= g2 / right[n + j]
    left = np.zeros(2 * n)
    left[idx] = vl[:, k].real
    # pinned entries make left a left eigenvector of the full matrix
    pinned = list(_origin_rows(n))
    left[pinned] = (left[idx] @ L[np.ix_(idx, pinned)]) / lam
    norm = left @ right
    left /= norm
    return GaugeProjector(right, left, float(lam), float(norm))


@lru_cache(maxsize=32)
def projector_for(grid):
    return gauge_projection(_generator(grid), grid)


# ---------------------------------------------------------------------------
# report


def _gauge_deviation(pair):
    u = pair.u.values
    g = gauge_mode_scalar(pair.u.grid.nodes)
    c = (g @ u) / (g @ g)
    return float(np.max(np.abs(u - c * g)) / np.max(np.abs(u)))


@dataclass
class ModeStabilityReport:
    spectra: dict
    converged: Spectrum
    gauge: EigenPair
    gauge_distance: float
    gauge_eigenfunction_error: float
    unstable: list
    above_half: list
    s0: float
    first_stable: complex
    region: Region

    @property
    def mode_stable(self):
        return not self.unstable

    def summary(self):
        return (
            f"mode_stable={'true' if self.mode_stable else 'false'} "
            f"s0={self.s0:.17g}"
        )


def mode_stability_report(
    n_list=(32, 48),
    region=Region(),
    match_tol=MATCH_TOL,
    residual_tol=RESIDUAL_TOL,
):
    """Solve at each resolution, keep eigenvalues confirmed at every level.

    Mode stability holds when, inside ``region``, no converged eigenvalue
    other than the gauge eigenvalue has non-negative real part.
    """
    n_list = list(n_list)
    if len(n_list) < 2 or any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError("n_list needs at least two increasing resolutions")
    spectra = {}
    for n in n_list:
        try:
            spectra[n] = qep_spectrum(n)
        except SolverError:
            raise
        except np.linalg.LinAlgError as exc:
            raise SolverError(str(exc), n) from exc
    conv = spectra[n_list[-1]]
    for n in reversed(n_list[:-1]):
        conv = filter_spectrum(spectra[n], conv, match_tol, residual_tol)
    if not len(conv):
        raise SolverError("no converged eigenvalues", n_list[-1])

    gauge = min(conv.pairs, key=lambda p: abs(p.lam - 1.0))
    others = [
        p for p in conv.pairs if p is not gauge and region.contains(p.lam)
    ]
    unstable = [p.lam for p in others if p.lam.real >= 0.0]
    above_half = [p.lam for p in others if p.lam.real > 0.5]
    rest = [p for p in conv.pairs if p is not gauge]
    if rest:
        first = max(rest, key=lambda p: p.lam.real)
        s0, first_lam = first.lam.real, first.lam
    else:
        s0, first_lam = float("nan"), complex("nan")
    return ModeStabilityReport(
        spectra=spectra,
        converged=conv,
        gauge=gauge,
        gauge_distance=abs(gauge.lam - 1.0),
        gauge_eigenfunction_error=_gauge_deviation(gauge),
        unstable=unstable,
        above_half=above_half,
        s0=float(s0),
        first_stable=first_lam,
        region=region,
    )


def write_spectrum_csv(path, report):
    """Write every computed eigenvalue; ``converged`` marks the filtered set."""
    conv = {p.lam for p in report.converged.pairs}
    top = report.converged.grid_size
    rows = []
    for n, spec in report.spectra.items():
        for p in spec.pairs:
            ok = n == top and p.lam in conv
            rows.append((p.lam.real, p.lam.imag, p.residual, ok, n))
    _io.write_csv(path, ["re", "im", "residual", "converged", "n"], rows)
