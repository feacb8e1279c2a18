import math

import numpy as np
import pytest
from scipy import integrate

from wmblowup.closed_forms import f0_jet, psiT_jet
from wmblowup.config import RunConfig
from wmblowup.diagnostics import (
    FitError,
    blowup_constant,
    blowup_scaling_report,
    fit_decay_rate,
    norm_E,
    norm_Eprime,
    psiT_profiles,
    theorem_rate_check,
    write_scaling_csv,
    y_norm,
)
from wmblowup.evolution import (
    EvolutionTrace,
    State,
    bump_data,
    default_data_grid,
    evolve,
    initial_data_v,
    selfsimilar_data,
)
from wmblowup.spectral_grid import Profile, make_grid
from wmblowup import _io


def _pair_minus_psi1(f_jet, g, grid):
    r = grid.nodes
    f = f_jet(r)[0] - f0_jet(r).value
    gg = g(r) - psiT_jet(0.0, r, 1.0)[1]
    return Profile(grid, f, 1), Profile(grid, gg, 1)


def _psiT_fns(Tp):
    def f_jet(r):
        j = f0_jet(np.asarray(r) / Tp)
        return j.value, j.d1 / Tp

    return f_jet, lambda r: psiT_jet(0.0, r, Tp)[1]


def test_norm_E_zero_and_errors():
    g = make_grid(32, 0, 1)
    z = Profile(g, np.zeros(32), 1)
    assert norm_E(z, z, 1.0) == 0.0
    with pytest.raises(ValueError):
        norm_E(z, z, 1.5)


def test_norm_E_blowup_ratio():
    vals = []
    for t in (0.0, 0.5, 0.75):
        s = 1.0 - t
        f, g = psiT_profiles(t, 1.0, 1.0)
        vals.append(norm_E(f, g, s))
    assert vals[1] / vals[0] == pytest.approx(0.5**-0.5, rel=1e-10)
    assert vals[2] / vals[0] == pytest.approx(0.25**-0.5, rel=1e-10)


def test_blowup_constant_matches_quadrature():
    h = lambda p: (6 + 2 * p**2) / (1 + p**2) ** 2
    c2 = integrate.quad(lambda p: h(p) ** 2, 0, 1)[0] + integrate.quad(lambda p: (p * h(p)) ** 2, 0, 1)[0]
    assert blowup_constant() == pytest.approx(math.sqrt(c2), rel=1e-12)
    f, g = psiT_profiles(0.0, 1.0, 1.0)
    assert norm_E(f, g, 1.0) == pytest.approx(math.sqrt(c2), rel=1e-12)


def test_norm_Eprime_zero():
    g = default_data_grid()
    z = Profile(g, np.zeros(g.n), 1)
    assert norm_Eprime(z, z) == 0.0


def test_norm_Eprime_equals_y_norm():
    grid = default_data_grid()
    for Tp in (0.9, 1.05):
        f_jet, g = _psiT_fns(Tp)
        f, gg = _pair_minus_psi1(f_jet, g, grid)
        v = initial_data_v(f_jet, g, grid)
        assert abs(norm_Eprime(f, gg) - y_norm(v)) < 1e-10


def test_norm_Eprime_linear_in_T_shift():
    grid = default_data_grid()
    vals = []
    for d in (1e-2, 5e-3, 2.5e-3):
        f, g = _pair_minus_psi1(*_psiT_fns(1 + d), grid)
        vals.append(norm_Eprime(f, g))
    assert vals[0] > 0
    assert vals[0] / vals[1] == pytest.approx(2.0, rel=0.02)
    assert vals[1] / vals[2] == pytest.approx(2.0, rel=0.02)


def test_fit_exact_exponential():
    t = np.linspace(0, 10, 101)
    fit = fit_decay_rate(t, np.exp(-0.54 * t))
    assert fit.omega_hat == pytest.approx(-0.54, abs=1e-12)
    assert fit.samples >= 10 and fit.window[0] < fit.window[1]


def test_fit_oscillating_envelope():
    t = np.linspace(0, 20, 801)
    y = np.exp(-0.54 * t) * (2 + np.cos(3 * t))
    fit = fit_decay_rate(t, y, window=(5.0, 5.0 + 3 * 2 * math.pi / 3 * 2))
    assert fit.omega_hat == pytest.approx(-0.54, abs=0.02)
    assert fit.stderr > 0


def test_fit_gauge_trace():
    tr = evolve(State.gauge(make_grid(32, 0, 1)), 3.0, "linear", sample_every=500)
    fit = fit_decay_rate(tr)
    assert fit.omega_hat == pytest.approx(1.0, abs=1e-3)


def test_fit_errors():
    t = np.linspace(0, 1, 5)
    with pytest.raises(FitError):
        fit_decay_rate(t, np.exp(-t))
    t = np.linspace(0, 10, 50)
    y = np.exp(-0.5 * t)
    y[30] = 1e-20
    with pytest.raises(FitError):
        fit_decay_rate(t, y, window=(0.0, 10.0))
    with pytest.raises(FitError):
        fit_decay_rate(t, y, window=(5.0, 5.0))


def test_fit_default_window_stops_at_floor():
    t = np.linspace(0, 100, 1001)
    y = np.maximum(np.exp(-0.5 * t), 1e-16)
    fit = fit_decay_rate(t, y)
    assert fit.omega_hat == pytest.approx(-0.5, abs=1e-10)
    assert fit.window[1] < 60


def test_scaling_report():
    rows = blowup_scaling_report(1.0, [0.0, 0.9, 0.99, 0.999])
    c = np.array([r.c_t for r in rows])
    assert np.max(np.abs(c - c[0])) / c[0] < 1e-8
    single = blowup_scaling_report(1.0, [0.3])
    assert single[0].c_t == pytest.approx(blowup_constant(), rel=1e-10)
    other = blowup_scaling_report(1.2, [0.0, 0.9, 0.99, 0.999])
    assert np.allclose([r.c_t for r in other], c, rtol=1e-8)
    with pytest.raises(ValueError):
        blowup_scaling_report(1.0, [1.0])


def test_scaling_csv(tmp_path):
    rows = blowup_scaling_report(1.0, [0.0, 0.5])
    p = tmp_path / "scaling.csv"
    write_scaling_csv(p, rows)
    cols = _io.read_csv(p)
    assert list(cols) == ["t", "T_minus_t", "norm_E", "c_t"]
    assert float(cols["c_t"][1]) == rows[1].c_t


def test_theorem_trivial_data():
    rep = theorem_rate_check(bump_data(0.0), RunConfig())
    assert rep.status == "trivial data"
    assert rep.fit is None


def test_theorem_oracle_zero_deviation():
    rep = theorem_rate_check(selfsimilar_data(1.05), RunConfig(tau_f=6.0))
    assert rep.status == "zero deviation"
    assert max(rep.deviation) < 1e-9
    assert rep.T_star == pytest.approx(1.05, abs=1e-6)


def test_theorem_bump(report_32_48):
    rep = theorem_rate_check(bump_data(1e-3), RunConfig(tau_f=8.0), s0=report_32_48.s0)
    assert rep.status == "ok"
    assert abs(rep.T_star - 1) < 1e-2
    assert rep.gap < 0.05
    # the normalized deviation at time t is the similarity norm at tau = -log(T - t)
    assert rep.deviation == rep.trace.norm_H
    assert rep.times[-1] == pytest.approx(rep.T_star - math.exp(-rep.trace.taus[-1]))
