"""Time evolution in similarity coordinates ``tau = -log(T - t)``, ``rho = r / (T - t)``.

The unknowns are stacked as ``u = [phi1; phi2]`` on a Lobatto grid over
``[0, 1]``. ``phi1`` and ``phi2`` vanish at the origin; those two samples are
pinned and never evolve. The light cone ``rho = 1`` is an outflow boundary
(characteristic speeds ``rho - 1 = 0`` and ``rho + 1 = 2``), so no condition is
imposed there.
"""

import math
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq

from . import _io
from .closed_forms import f0_jet, gauge_mode, psiT_jet
from .mode_stability import assemble_L, projector_for
from .spectral_grid import (
    Grid,
    Profile,
    averaging_matrix,
    interpolate,
    make_grid,
    resample,
)

LINEAR = "linear"
NONLINEAR = "nonlinear"
_MODES = (LINEAR, NONLINEAR)

T_MIN, T_MAX = 0.5, 1.5
DATA_RADIUS = 1.5
ESCAPE = 0.05


class InstabilityError(ArithmeticError):
    """Nonfinite values appeared in the discrete solution."""

    def __init__(self, tau):
        super().__init__(f"nonfinite values in the solution at tau={tau:.17g}")
        self.tau = tau


class ShootingError(RuntimeError):
    pass


def _check_mode(mode):
    if mode not in _MODES:
        raise ValueError(f"mode must be 'linear' or 'nonlinear', got {mode!r}")


# ---------------------------------------------------------------------------
# states


@dataclass(frozen=True)
class State:
    phi1: Profile
    phi2: Profile
    tau: float = 0.0

    def __post_init__(self):
        if not self.phi1.grid.same_as(self.phi2.grid):
            raise ValueError("phi1 and phi2 live on different grids")
        g = self.phi1.grid
        if g.a != 0.0 or g.b != 1.0:
            raise ValueError("states live on [0, 1]")
        if self.phi1.origin_order < 3 or self.phi2.origin_order < 1:
            raise ValueError("phi1 must be O(rho^3) and phi2 O(rho) at the origin")

    @property
    def grid(self):
        return self.phi1.grid

    @property
    def stacked(self):
        return np.concatenate([self.phi1.values, self.phi2.values])

    @classmethod
    def from_stacked(cls, grid, u, tau=0.0):
        n = grid.n
        return cls(Profile(grid, u[:n], 3), Profile(grid, u[n:], 1), float(tau))

    @classmethod
    def zero(cls, grid, tau=0.0):
        return cls.from_stacked(grid, np.zeros(2 * grid.n), tau)

    @classmethod
    def gauge(cls, grid, tau=0.0):
        g = gauge_mode(grid.nodes)
        return cls.from_stacked(grid, np.concatenate([g.g1, g.g2]), tau)


@dataclass(frozen=True)
class PerturbationData:
    """Time-independent encoding ``v`` of initial data relative to ``psi^1``."""

    v1: Profile
    v2: Profile

    def __post_init__(self):
        g = self.v1.grid
        if not g.same_as(self.v2.grid):
            raise ValueError("v1 and v2 live on different grids")
        if g.a != 0.0 or g.b < DATA_RADIUS:
            raise ValueError(f"perturbation data must cover [0, {DATA_RADIUS}]")
        if self.v1.origin_order < 2 or self.v2.origin_order < 1:
            raise ValueError("v1 must be O(rho^2) and v2 O(rho) at the origin")

    @property
    def grid(self):
        return self.v1.grid

    def is_zero(self):
        return not (np.any(self.v1.values) or np.any(self.v2.values))


@dataclass
class EvolutionTrace:
    taus: list = field(default_factory=list)
    norm_H: list = field(default_factory=list)
    gauge_coeff: list = field(default_factory=list)
    snapshots: list = field(default_factory=list)
    status: str = "ok"
    message: str = ""
    final: Optional[State] = None

    def record(self, tau, u, ops):
        if self.taus and not tau > self.taus[-1]:
            return
        self.taus.append(float(tau))
        self.norm_H.append(ops.norm_H(u))
        self.gauge_coeff.append(float(ops.P.left @ u))

    def arrays(self):
        return np.array(self.taus), np.array(self.norm_H), np.array(self.gauge_coeff)

    def write_csv(self, path):
        rows = zip(self.taus, self.norm_H, self.gauge_coeff)
        _io.write_csv(path, ["tau", "norm_H", "gauge_coeff"], rows)

    @classmethod
    def read_csv(cls, path):
        cols = _io.read_csv(path)
        return cls(
            [float(x) for x in cols["tau"]],
            [float(x) for x in cols["norm_H"]],
            [float(x) for x in cols["gauge_coeff"]],
        )


def write_snapshot(path, state):
    rows = zip(state.grid.nodes, state.phi1.values, state.phi2.values)
    _io.write_csv(path, ["rho", "phi1", "phi2"], rows)


def snapshot_name(tau):
    # shortest round-trip repr keeps names readable and unique
    return f"state_tau={float(tau)!r}.csv"


# ---------------------------------------------------------------------------
# discrete operators


class _Operators:
    """Everything the right-hand side needs on one grid, precomputed."""

    def __init__(self, grid):
        self.grid = grid
        self.n = grid.n
        self.L = assemble_L(grid)
        self.A = averaging_matrix(grid)
        a = 2.0 * f0_jet(grid.nodes).value
        self.sin_a, self.cos_a = np.sin(a), np.cos(a)
        self.P = projector_for(grid)
        r = grid.nodes
        self.inv_r = np.zeros_like(r)
        self.inv_r[1:] = 1.0 / r[1:]
        self.w = grid.w
        self.D = grid.D
        self.D2_0 = grid.D2[0]

    def N(self, x):
        s = np.sin(x)
        return -2.0 * self.sin_a * s * s + self.cos_a * (np.sin(2.0 * x) - 2.0 * x)

    def rhs(self, u, nonlinear):
        du = self.L @ u
        if nonlinear:
            du[: self.n] -= self.N(self.A @ u[self.n :])
            du[0] = 0.0
        return du

    def norm_H(self, u):
        n = self.n
        d1 = self.D @ u[:n]
        q = d1 * self.inv_r
        q[0] = self.D2_0 @ u[:n]
        d2 = self.D @ u[n:]
        return math.sqrt(max(float(self.w @ (q * q + d2 * d2)), 0.0))

    @lru_cache(maxsize=8)
    def propagator(self, dt):
        # one classical RK4 step of a linear system is a fixed polynomial in dt*L
        Z = dt * self.L
        eye = np.eye(2 * self.n)
        M = eye + Z @ (eye + Z @ (eye + Z @ (eye + Z / 4.0) / 3.0) / 2.0)
        M.setflags(write=False)
        return M


@lru_cache(maxsize=16)
def _ops(grid):
    return _Operators(grid)


def _require_unit_grid(grid):
    if grid.a != 0.0 or grid.b != 1.0:
        raise ValueError("expected a grid on [0, 1]")


def norm_H(state):
    """Discrete norm ``(int |phi1'|^2 / rho^2 + int |phi2'|^2)^(1/2)``.

    The origin integrand uses the limit ``phi1''(0)^2``.
    """
    return _ops(state.grid).norm_H(state.stacked)


def rhs(state, mode=NONLINEAR):
    """Time derivative of ``state``, returned as a State-shaped pair of arrays."""
    _check_mode(mode)
    ops = _ops(state.grid)
    du = ops.rhs(state.stacked, mode == NONLINEAR)
    n = state.grid.n
    return du[:n], du[n:]


def cfl_dt(grid, safety=0.2):
    """Step ``safety * min spacing / 2``; the largest characteristic speed is 2."""
    if not safety > 0:
        raise ValueError("safety factor must be positive")
    return float(safety * np.min(np.diff(grid.nodes)) / 2.0)


def _rk4(ops, u, dt, nonlinear):
    k1 = ops.rhs(u, nonlinear)
    k2 = ops.rhs(u + 0.5 * dt * k1, nonlinear)
    k3 = ops.rhs(u + 0.5 * dt * k2, nonlinear)
    k4 = ops.rhs(u + dt * k3, nonlinear)
    out = u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    out[0] = 0.0
    out[ops.n] = 0.0
    return out


def rk4_step(state, dt, mode=NONLINEAR):
    """One classical Runge-Kutta step; origin samples are re-pinned to zero."""
    _check_mode(mode)
    if not dt > 0:
        raise ValueError("dt must be positive")
    ops = _ops(state.grid)
    out = _rk4(ops, state.stacked, dt, mode == NONLINEAR)
    tau = state.tau + dt
    if not np.all(np.isfinite(out)):
        raise InstabilityError(tau)
    return State.from_stacked(state.grid, out, tau)


def _segment_steps(span, dt):
    """Full steps of size ``dt`` plus a shortened last step landing on ``span``."""
    k = int(math.floor(span / dt * (1.0 + 1e-12)))
    rest = span - k * dt
    if rest <= 1e-12 * dt:
        rest = 0.0
    return k, rest


def evolve(
    initial,
    tau_end,
    mode=NONLINEAR,
    sample_every=100,
    *,
    cfl_safety=0.2,
    snapshot_taus=(),
    escape=None,
):
    """Integrate from ``initial.tau`` to ``tau_end``.

    Parameters
    ----------
    initial : State
    tau_end : float
    mode : {'linear', 'nonlinear'}
    sample_every : int
        Record ``norm_H`` and the gauge coefficient every this many steps,
        plus at both endpoints.
    snapshot_taus : sequence of float
        Times at which full states are stored; the stepper lands on them.
    escape : float, optional
        Stop early, with status ``'escaped'``, once the gauge coefficient
        exceeds this in modulus.

    Returns
    -------
    EvolutionTrace
        ``status`` is ``'ok'``, ``'escaped'`` or ``'blowup'`` (nonfinite values).
    """
    _check_mode(mode)
    if not tau_end > initial.tau:
        raise ValueError("tau_end must exceed the initial tau")
    if sample_every < 1:
        raise ValueError("sample_every must be at least 1")
    grid = initial.grid
    ops = _ops(grid)
    nonlinear = mode == NONLINEAR
    dt = cfl_dt(grid, cfl_safety)
    left = ops.P.left
    n = grid.n

    stops = sorted({float(s) for s in snapshot_taus if initial.tau < s < tau_end})
    snap_set = set(stops)
    stops.append(float(tau_end))

    trace = EvolutionTrace()
    u = initial.stacked.copy()
    tau = float(initial.tau)
    trace.record(tau, u, ops)
    if initial.tau in {float(s) for s in snapshot_taus}:
        trace.snapshots.append(initial)
    count = 0

    def advance(u, h):
        if nonlinear:
            return _rk4(ops, u, h, True)
        out = ops.propagator(h) @ u
        out[0] = out[n] = 0.0
        return out

    try:
        for stop in stops:
            k, rest = _segment_steps(stop - tau, dt)
            start = tau
            for i in range(k + (rest > 0)):
                h = dt if i < k else rest
                u = advance(u, h)
                tau = start + (i + 1) * dt if i < k else stop
                count += 1
                if not np.all(np.isfinite(u)):
                    raise InstabilityError(tau)
                if escape is not None and abs(left @ u) > escape:
                    trace.record(tau, u, ops)
                    trace.status = "escaped"
                    trace.message = f"gauge coefficient left the window at tau={tau:.17g}"
                    trace.final = State.from_stacked(grid, u, tau)
                    return trace
                if count % sample_every == 0:
                    trace.record(tau, u, ops)
            tau = stop
            trace.record(tau, u, ops)
            if stop in snap_set:
                trace.snapshots.append(State.from_stacked(grid, u, tau))
    except InstabilityError as exc:
        trace.status = "blowup"
        trace.message = str(exc)
        trace.final = None
        return trace
    trace.final = State.from_stacked(grid, u, tau)
    return trace


# ---------------------------------------------------------------------------
# initial data


def default_data_grid(n=48):
    return make_grid(n, 0.0, DATA_RADIUS)


def initial_data_v(f_jet, g, grid15=None):
    """Encode data ``(f, g)`` relative to ``psi^1(0, .)``.

    ``v1 = rho^2 (g - rho f0')`` and ``v2 = rho (f' - f0') + 2 (f - f0)``,
    evaluated at the nodes of ``grid15`` (a grid on ``[0, 3/2]``).
    """
    if grid15 is None:
        grid15 = default_data_grid()
    r = grid15.nodes
    f, df = (np.asarray(x, dtype=float) for x in f_jet(r))
    gv = np.asarray(g(r), dtype=float)
    f_at0, _ = f_jet(np.zeros(1))
    g_at0 = g(np.zeros(1))
    if abs(float(np.ravel(f_at0)[0])) > 1e-12 or abs(float(np.ravel(g_at0)[0])) > 1e-12:
        raise ValueError("initial data must satisfy f(0) = g(0) = 0")
    psi, psi_t, psi_r = psiT_jet(0.0, r, 1.0)
    v1 = r**2 * (gv - psi_t)
    v2 = r * (df - psi_r) + 2.0 * (f - psi)
    v2[0] = 0.0
    return PerturbationData(Profile(grid15, v1, 2), Profile(grid15, v2, 1))


def initial_data_U(v, T, grid):
    """Similarity-coordinate data ``U(v, T)`` on ``grid`` (over ``[0, 1]``).

    The returned state sits at ``tau = -log T`` (physical time ``t = 0``).
    """
    _require_unit_grid(grid)
    if not T_MIN < T < T_MAX:
        raise ValueError(f"T must lie in ({T_MIN}, {T_MAX}), got {T}")
    r = grid.nodes
    Tr = T * r
    v1 = interpolate(v.v1, Tr)
    v2 = interpolate(v.v2, Tr)
    j_T = f0_jet(Tr)
    j_1 = f0_jet(r)
    # grouped so that v = 0, T = 1 gives exact zeros
    U1 = v1 / T + (Tr**3 * j_T.d1 / T - r**3 * j_1.d1)
    U2 = v2 + (Tr * j_T.d1 - r * j_1.d1) + 2.0 * (j_T.value - j_1.value)
    U1[0] = U2[0] = 0.0
    return State(Profile(grid, U1, 3), Profile(grid, U2, 1), -math.log(T))


def gauge_coefficient(state, P=None):
    """Coordinate of ``state`` along the gauge mode."""
    if P is None:
        P = projector_for(state.grid)
    elif len(P.left) != 2 * state.grid.n:
        raise ValueError("projector and state live on different grids")
    return float(P.left @ state.stacked)


# data families


def selfsimilar_data(T_prime, grid15=None):
    """Data of ``psi^{T'}`` at ``t = 0``: exact oracle with blow-up time ``T'``."""

    def f_jet(r):
        j = f0_jet(np.asarray(r) / T_prime)
        return j.value, j.d1 / T_prime

    def g(r):
        return psiT_jet(0.0, r, T_prime)[1]

    return initial_data_v(f_jet, g, grid15)


def bump_data(eps, mu=0.5, sigma=0.2, grid15=None):
    """``v1 = 0``, ``v2 = eps rho exp(-((rho - mu) / sigma)^2)``."""
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    if grid15 is None:
        grid15 = default_data_grid()
    r = grid15.nodes
    v2 = eps * r * np.exp(-(((r - mu) / sigma) ** 2))
    return PerturbationData(Profile(grid15, np.zeros_like(r), 2), Profile(grid15, v2, 1))


def load_data(path, grid15=None):
    """Read ``rho,v1,v2`` samples from CSV.

    Samples on the Lobatto nodes of ``[0, 3/2]`` are used as they are;
    anything else is put on ``grid15`` by a cubic spline.
    """
    cols = _io.read_csv(path)
    try:
        rho = np.array([float(x) for x in cols["rho"]])
        v1 = np.array([float(x) for x in cols["v1"]])
        v2 = np.array([float(x) for x in cols["v2"]])
    except KeyError as exc:
        raise ValueError(f"{path}: missing column {exc}") from exc
    if len(rho) >= 8:
        g = make_grid(len(rho), 0.0, DATA_RADIUS)
        if np.allclose(rho, g.nodes, rtol=0, atol=1e-12):
            return PerturbationData(Profile(g, v1, 2), Profile(g, v2, 1))
    if rho[0] != 0.0 or rho[-1] < DATA_RADIUS or np.any(np.diff(rho) <= 0):
        raise ValueError(f"{path}: rho must increase from 0 to at least {DATA_RADIUS}")
    if grid15 is None:
        grid15 = default_data_grid()
    r = grid15.nodes
    return PerturbationData(
        Profile(grid15, CubicSpline(rho, v1)(r), 2),
        Profile(grid15, CubicSpline(rho, v2)(r), 1),
    )


# ---------------------------------------------------------------------------
# shooting on the blow-up time


@dataclass
class ShootingResult:
    T_star: float
    trace: EvolutionTrace
    iterations: int
    c_star: float
    evaluations: dict


def _shooting_functional(v, grid, tau_f, cfl_safety, escape):
    cache = {}

    def c(T):
        T = float(T)
        if T not in cache:
            U = initial_data_U(v, T, grid)
            tr = evolve(
                U,
                U.tau + tau_f,
                NONLINEAR,
                sample_every=10**9,
                cfl_safety=cfl_safety,
                escape=escape,
            )
            if tr.status == "blowup":
                raise ShootingError(f"T={T!r}: {tr.message}")
            elapsed = tr.taus[-1] - U.tau
            cache[T] = math.exp(-elapsed) * tr.gauge_coeff[-1]
        return cache[T]

    return c, cache


def tune_T(
    v,
    tau_f=10.0,
    T_bracket=(0.75, 1.3),
    *,
    grid=None,
    root_tol=1e-14,
    max_iter=100,
    cfl_safety=0.2,
    sample_every=50,
    escape=ESCAPE,
    snapshot_taus=(),
):
    """Find the blow-up time ``T*`` for which the gauge instability is switched off.

    ``c(T)`` is the gauge coefficient of the nonlinear evolution of
    ``U(v, T)`` after ``tau_f`` units of similarity time, times
    ``exp(-tau_f)``. Runs whose gauge coefficient exceeds ``escape`` stop
    early and report ``exp(-elapsed) a`` instead; the sign, which is all
    the bracketing needs, is already settled by then.

    Returns
    -------
    ShootingResult
        ``T_star``, the tuned trace and the number of root-finder iterations.

    Raises
    ------
    ShootingError
        No sign change on the bracket, no convergence, or a blown-up run.
    """
    lo, hi = map(float, T_bracket)
    if not (T_MIN < lo < hi < T_MAX):
        raise ValueError(f"bracket must satisfy {T_MIN} < lo < hi < {T_MAX}")
    if not tau_f > 0:
        raise ValueError("tau_f must be positive")
    if grid is None:
        grid = make_grid(32, 0.0, 1.0)
    c, cache = _shooting_functional(v, grid, tau_f, cfl_safety, escape)

    iterations = 0
    T_star = None
    # v = 0 sits exactly at T = 1, so probe it first
    if lo < 1.0 < hi:
        c1 = c(1.0)
        if c1 == 0.0:
            T_star = 1.0
        else:
            c_lo = c(lo)
            if np.sign(c_lo) != np.sign(c1):
                hi = 1.0
            else:
                lo = 1.0
    if T_star is None:
        c_lo, c_hi = c(lo), c(hi)
        if c_lo == 0.0:
            T_star = lo
        elif c_hi == 0.0:
            T_star = hi
        elif np.sign(c_lo) == np.sign(c_hi):
            raise ShootingError(
                f"c(T) has the same sign at T={lo!r} and T={hi!r}; "
                "no blow-up time in the bracket"
            )
        else:
            T_star, info = brentq(
                c, lo, hi, xtol=root_tol, maxiter=max_iter, full_output=True, disp=False
            )
            iterations = info.iterations
            if not info.converged:
                raise ShootingError(f"root finder did not converge: {info.flag}")

    U = initial_data_U(v, T_star, grid)
    trace = evolve(
        U,
        U.tau + tau_f,
        NONLINEAR,
        sample_every=sample_every,
        cfl_safety=cfl_safety,
        snapshot_taus=snapshot_taus,
    )
    if trace.status != "ok":
        raise ShootingError(f"tuned evolution failed: {trace.message}")
    return ShootingResult(T_star, trace, iterations, c(T_star), dict(cache))


# ---------------------------------------------------------------------------
# back to physical variables


def reconstruct_psi(state, T, r_samples):
    """Physical ``(psi, psi_t)`` at ``t = T - exp(-tau)`` and radii ``r_samples``."""
    s = math.exp(-state.tau)
    t = T - s
    r = np.asarray(r_samples, dtype=float)
    if np.any(r < 0) or np.any(r > s * (1.0 + 1e-14)):
        raise ValueError(f"radii must lie in the backward light cone [0, {s:.17g}]")
    rho = np.minimum(r / s, 1.0)
    grid = state.grid
    Aphi2 = averaging_matrix(grid) @ state.phi2.values
    Ap = interpolate(Profile(grid, Aphi2), rho)
    # phi1 = O(rho^3), so phi1 / rho^2 is interpolated from the quotient samples
    q = np.zeros(grid.n)
    q[1:] = state.phi1.values[1:] / grid.nodes[1:] ** 2
    q_at = interpolate(Profile(grid, q), rho)
    psi, psi_t, _ = psiT_jet(t, r, T)
    return psi + Ap, psi_t + q_at / s


# ---------------------------------------------------------------------------
# exact free waves


def _dalembert(f0, f1, x, t):
    """Odd extension of the data, then the d'Alembert formula and its derivatives."""

    def F(y):
        y = np.asarray(y, dtype=float)
        return np.sign(y) * f0(np.abs(y))

    def dF(y):
        return f0.derivative_at(np.abs(y))

    def G(y):
        # antiderivative of the odd extension of f1 is even
        return f1.antiderivative_at(np.abs(y))

    def g1(y):
        y = np.asarray(y, dtype=float)
        return np.sign(y) * f1(np.abs(y))

    u = 0.5 * (F(x + t) + F(x - t)) + 0.5 * (G(x + t) - G(x - t))
    ut = 0.5 * (dF(x + t) - dF(x - t)) + 0.5 * (g1(x + t) + g1(x - t))
    ux = 0.5 * (dF(x + t) + dF(x - t)) + 0.5 * (g1(x + t) - g1(x - t))
    return u, ut, ux


class _Smooth:
    """Polynomial interpolant with exact derivative and antiderivative samples."""

    def __init__(self, profile):
        g = profile.grid
        self.p = profile
        self.d = Profile(g, g.D @ profile.values)
        self.q = Profile(g, g.Antider @ profile.values)

    def _eval(self, prof, y):
        y = np.asarray(y, dtype=float)
        b = prof.grid.b
        out = np.zeros_like(y)
        inside = y <= b
        out[inside] = interpolate(prof, y[inside])
        return out

    def __call__(self, y):
        return self._eval(self.p, y)

    def derivative_at(self, y):
        return self._eval(self.d, y)

    def antiderivative_at(self, y):
        y = np.asarray(y, dtype=float)
        out = self._eval(self.q, y)
        out[y > self.p.grid.b] = self.q.values[-1]
        return out


def free_wave_check(fhat0, fhat1, t, support_tol=1e-10):
    """Energy ``int (w_t^2 + w_r^2) dr`` of the exact free wave at times 0 and ``t``.

    ``w = r phi_r + 2 phi`` solves the one-dimensional wave equation on the
    half line with ``w(t, 0) = 0``; it is propagated by d'Alembert's formula
    after odd reflection and the energy is integrated on a fine Lobatto grid.

    Raises
    ------
    ValueError
        If the data do not vanish near ``R_big`` or the wave would reach it.
    """
    grid = fhat0.grid
    if not grid.same_as(fhat1.grid) or grid.a != 0.0:
        raise ValueError("both data must live on the same grid over [0, R_big]")
    if t < 0:
        raise ValueError("t must be non-negative")
    R = grid.b
    scale = max(np.max(np.abs(fhat0.values)), np.max(np.abs(fhat1.values)), 1e-300)
    r = grid.nodes
    occupied = (np.abs(fhat0.values) > support_tol * scale) | (
        np.abs(fhat1.values) > support_tol * scale
    )
    if occupied[-1] or occupied[0]:
        raise ValueError("data must vanish at both ends of the grid")
    if np.any(occupied) and r[occupied].max() + t >= R:
        raise ValueError("support would leave the grid before time t")
    f0 = _Smooth(fhat0)
    f1 = _Smooth(fhat1)
    fine = make_grid(4 * grid.n, 0.0, R)

    def energy(time):
        _, ut, ux = _dalembert(f0, f1, fine.nodes, time)
        return float(fine.integrate(ut**2 + ux**2))

    e0 = energy(0.0)
    et = e0 if t == 0 else energy(float(t))
    return e0, et
