"""Norms, decay-rate fits and the blow-up scaling measurements."""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import integrate

from . import _io
from .closed_forms import f0_jet, psiT_jet
from .spectral_grid import Profile, interpolate, make_grid

FLOOR = 1e3 * np.finfo(float).eps
MIN_SAMPLES = 10
# tuned oracle runs sit at round-off times exp(tau_f) amplification
ZERO_DEVIATION = 1e-9


class FitError(ValueError):
    pass


def _check_pair(f, g, R):
    if not f.grid.same_as(g.grid):
        raise ValueError("f and g must share a grid")
    grid = f.grid
    if grid.a != 0.0:
        raise ValueError("profiles must start at r = 0")
    if R is not None and R > grid.b * (1.0 + 1e-14):
        raise ValueError(f"R={R} exceeds the profile interval [0, {grid.b}]")
    return grid


def norm_E(f, g, R=None, n=None):
    """Energy-type norm on ``[0, R]``.

    ``||(f, g)||^2 = int_0^R |r f'' + 3 f'|^2 dr + int_0^R |r g' + 2 g|^2 dr``

    When ``R`` is below the profile interval, the profiles are resampled on a
    fresh Lobatto grid over ``[0, R]`` before differentiating.
    """
    grid = _check_pair(f, g, R)
    if R is None:
        R = grid.b
    if R < grid.b:
        sub = make_grid(n or grid.n, 0.0, R)
        f = Profile(sub, interpolate(f, sub.nodes))
        g = Profile(sub, interpolate(g, sub.nodes))
        grid = sub
    r = grid.nodes
    d1 = grid.D @ f.values
    d2 = grid.D @ d1
    a = r * d2 + 3.0 * d1
    b = r * (grid.D @ g.values) + 2.0 * g.values
    return math.sqrt(max(float(grid.integrate(a * a + b * b)), 0.0))


def norm_Eprime(f, g):
    """Higher norm on the profiles' full interval (``[0, 3/2]`` for initial data).

    Squared, it is ``int |r f''' + 4 f''|^2 r^2 + int |r f'' + 3 f'|^2
    + int |r^2 g'' + 4 r g' + 2 g|^2``.
    """
    grid = _check_pair(f, g, None)
    r = grid.nodes
    D = grid.D
    f1 = D @ f.values
    f2 = D @ f1
    f3 = D @ f2
    g1 = D @ g.values
    g2 = D @ g1
    a = (r * f3 + 4.0 * f2) * r
    b = r * f2 + 3.0 * f1
    c = r**2 * g2 + 4.0 * r * g1 + 2.0 * g.values
    return math.sqrt(max(float(grid.integrate(a * a + b * b + c * c)), 0.0))


def y_norm(v):
    """``||v||^2 = int |v1''|^2 + int |v2'|^2 + int rho^2 |v2''|^2``."""
    grid = v.grid
    D = grid.D
    v1pp = D @ (D @ v.v1.values)
    v2p = D @ v.v2.values
    v2pp = D @ v2p
    r = grid.nodes
    val = grid.integrate(v1pp**2 + v2p**2 + (r * v2pp) ** 2)
    return math.sqrt(max(float(val), 0.0))


# ---------------------------------------------------------------------------
# rate fitting


@dataclass(frozen=True)
class RateFit:
    omega_hat: float
    stderr: float
    window: tuple
    samples: int = 0


def fit_decay_rate(taus, values=None, window=None, floor=FLOOR):
    """Least-squares slope of ``log values`` against ``tau``.

    Parameters
    ----------
    taus : array_like or EvolutionTrace
        A trace may be passed directly; its ``norm_H`` is then used.
    values : array_like, optional
    window : (float, float), optional
        Defaults to the last 60% of the samples above ``floor``.

    Raises
    ------
    FitError
        Fewer than 10 samples in the window, or samples below the floor.
    """
    if values is None:
        taus, values = taus.taus, taus.norm_H
    t = np.asarray(taus, dtype=float)
    y = np.abs(np.asarray(values, dtype=float))
    if window is None:
        above = np.flatnonzero(y < floor)
        stop = above[0] if above.size else len(t)
        if stop < 2:
            raise FitError("trace is at the floor from the start")
        lo = t[0] + 0.4 * (t[stop - 1] - t[0])
        window = (lo, t[stop - 1])
    lo, hi = map(float, window)
    if not lo < hi:
        raise FitError("window must satisfy tau_lo < tau_hi")
    m = (t >= lo) & (t <= hi)
    k = int(m.sum())
    if k < MIN_SAMPLES:
        raise FitError(f"only {k} samples in [{lo}, {hi}], need {MIN_SAMPLES}")
    if np.any(y[m] < floor):
        raise FitError("samples in the window are below the round-off floor")
    x, ly = t[m], np.log(y[m])
    A = np.column_stack([x, np.ones_like(x)])
    coef, _, _, _ = np.linalg.lstsq(A, ly, rcond=None)
    resid = ly - A @ coef
    dof = max(k - 2, 1)
    sxx = float(np.sum((x - x.mean()) ** 2))
    stderr = math.sqrt(float(resid @ resid) / dof / sxx)
    return RateFit(float(coef[0]), stderr, (lo, hi), k)


# ---------------------------------------------------------------------------
# blow-up scaling


def blowup_constant():
    """``C`` in ``||psi^T(t)||_{E(T-t)} = C (T - t)^{-1/2}``, by adaptive quadrature."""

    def h(rho):
        return (6.0 + 2.0 * rho**2) / (1.0 + rho**2) ** 2

    val, _ = integrate.quad(lambda p: h(p) ** 2 * (1.0 + p**2), 0.0, 1.0, epsabs=0.0, epsrel=1e-13)
    return math.sqrt(val)


def psiT_profiles(t, T, R, n=48):
    """``psi^T(t, .)`` and ``psi^T_t(t, .)`` sampled on a Lobatto grid over ``[0, R]``."""
    grid = make_grid(n, 0.0, R)
    psi, psi_t, _ = psiT_jet(t, grid.nodes, T)
    return Profile(grid, psi, 1), Profile(grid, psi_t, 1)


@dataclass(frozen=True)
class ScalingRow:
    t: float
    T_minus_t: float
    norm_E: float
    c_t: float


def blowup_scaling_report(T, t_list, n=48):
    """``c_t = (T - t)^{1/2} ||psi^T(t)||_{E(T-t)}`` for each ``t``; all should agree."""
    rows = []
    for t in t_list:
        if not t < T:
            raise ValueError(f"t={t} is not before the blow-up time T={T}")
        s = T - t
        f, g = psiT_profiles(t, T, s, n)
        e = norm_E(f, g, s)
        rows.append(ScalingRow(float(t), s, e, math.sqrt(s) * e))
    return rows


def write_scaling_csv(path, rows):
    _io.write_csv(
        path,
        ["t", "T_minus_t", "norm_E", "c_t"],
        [(r.t, r.T_minus_t, r.norm_E, r.c_t) for r in rows],
    )


# ---------------------------------------------------------------------------
# rate check against the spectral bound


@dataclass
class TheoremReport:
    status: str
    T_star: float = float("nan")
    fit: Optional[RateFit] = None
    s0: float = float("nan")
    omega_hat: float = float("nan")
    gap: float = float("nan")
    times: list = field(default_factory=list)
    deviation: list = field(default_factory=list)
    trace: object = None

    @property
    def passed(self):
        return self.status == "ok" and self.gap < 0.05

    def summary(self):
        parts = [f"status={self.status}", f"T_star={self.T_star:.17g}"]
        if self.fit is not None:
            parts += [
                f"omega_hat={self.omega_hat:.17g}",
                f"s0={self.s0:.17g}",
                f"gap={self.gap:.3g}",
            ]
        return " ".join(parts)


def normalized_deviation(trace, T):
    """``(T - t)^{1/2} ||(psi, psi_t) - psi^T||_{E(T - t)}`` along a similarity trace.

    By the change of variables this is exactly ``norm_H`` of the similarity
    state; the physical times are ``t = T - exp(-tau)``.
    """
    taus = np.asarray(trace.taus)
    times = T - np.exp(-taus)
    return times, np.asarray(trace.norm_H)


def theorem_rate_check(v, config, s0=None):
    """Tune ``T``, then fit the decay of the normalized deviation.

    With ``t = T - e^{-tau}`` the deviation decays like ``(T - t)^{|omega|}``,
    i.e. like ``e^{-|omega| tau}``; ``|omega_hat|`` is compared to ``|s0|``.
    """
    from .evolution import tune_T
    from .mode_stability import mode_stability_report

    if v.is_zero():
        return TheoremReport(status="trivial data", T_star=1.0, gap=0.0)
    res = tune_T(
        v,
        config.tau_f,
        config.T_bracket,
        grid=make_grid(config.grid_n, 0.0, 1.0),
        cfl_safety=config.cfl_safety,
        sample_every=config.sample_every,
    )
    times, dev = normalized_deviation(res.trace, res.T_star)
    report = TheoremReport(
        status="ok", T_star=res.T_star, times=list(times), deviation=list(dev), trace=res.trace
    )
    if np.max(dev) < ZERO_DEVIATION:
        report.status = "zero deviation"
        report.gap = 0.0
        return report
    if s0 is None:
        s0 = mode_stability_report(
            [config.grid_n, config.grid_n_hi],
            config.region,
            config.match_tol,
            config.residual_tol,
        ).s0
    fit = fit_decay_rate(res.trace)
    report.fit = fit
    report.s0 = float(s0)
    report.omega_hat = fit.omega_hat
    report.gap = abs(abs(fit.omega_hat) - abs(s0))
    return report
