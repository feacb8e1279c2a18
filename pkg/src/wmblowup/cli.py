"""Command-line entry point.

Subcommands ``spectrum``, ``evolve``, ``tune``, ``scaling`` and ``theorem``.
Exit status is 0 on success, 1 on a numerical failure and 2 on a usage or
configuration error.
"""

import argparse
import dataclasses
import math
import os
import sys

import numpy as np

from . import config as cfgmod
from .diagnostics import FitError, blowup_scaling_report, theorem_rate_check, write_scaling_csv
from .evolution import (
    InstabilityError,
    ShootingError,
    bump_data,
    evolve,
    initial_data_U,
    load_data,
    selfsimilar_data,
    snapshot_name,
    tune_T,
    write_snapshot,
)
from .mode_stability import SolverError, mode_stability_report, write_spectrum_csv
from .spectral_grid import make_grid

NUMERICAL = (SolverError, ShootingError, FitError, InstabilityError, ArithmeticError)


class UsageError(Exception):
    pass


def perturbation_from_config(cfg):
    if cfg.data_family == "selfsimilar":
        return selfsimilar_data(cfg.T_prime)
    if cfg.data_family == "bump":
        return bump_data(cfg.eps, cfg.mu, cfg.sigma)
    try:
        return load_data(cfg.path)
    except OSError as exc:
        raise UsageError(f"cannot read data file: {exc}") from exc


def _out(args, name):
    return os.path.join(args.out_dir, name)


def cmd_spectrum(cfg, args):
    rep = mode_stability_report(
        [cfg.grid_n, cfg.grid_n_hi], cfg.region, cfg.match_tol, cfg.residual_tol
    )
    write_spectrum_csv(_out(args, "spectrum.csv"), rep)
    print(rep.summary())
    print(f"gauge_eigenvalue={rep.gauge.lam.real:.17g} distance={rep.gauge_distance:.3g}")
    print(f"converged={len(rep.converged)} unstable={len(rep.unstable)}")
    return 0


def cmd_evolve(cfg, args):
    v = perturbation_from_config(cfg)
    U = initial_data_U(v, cfg.evolve_T, make_grid(cfg.grid_n, 0.0, 1.0))
    if not cfg.tau_end > U.tau:
        raise UsageError(f"tau_end must exceed the initial tau {U.tau:.17g}")
    trace = evolve(
        U,
        cfg.tau_end,
        cfg.evolve_mode,
        cfg.sample_every,
        cfl_safety=cfg.cfl_safety,
        snapshot_taus=args.snapshot or (),
    )
    trace.write_csv(_out(args, "trace.csv"))
    for s in trace.snapshots:
        write_snapshot(_out(args, snapshot_name(s.tau)), s)
    print(f"status={trace.status} tau_end={trace.taus[-1]:.17g} norm_H={trace.norm_H[-1]:.17g}")
    if trace.status == "blowup":
        print(trace.message, file=sys.stderr)
        return 1
    return 0


def cmd_tune(cfg, args):
    v = perturbation_from_config(cfg)
    res = tune_T(
        v,
        cfg.tau_f,
        cfg.T_bracket,
        grid=make_grid(cfg.grid_n, 0.0, 1.0),
        root_tol=cfg.root_tol,
        cfl_safety=cfg.cfl_safety,
        sample_every=cfg.sample_every,
    )
    res.trace.write_csv(_out(args, "trace.csv"))
    print(f"T_star={res.T_star:.17g}")
    print(f"iterations={res.iterations} c={res.c_star:.3g}")
    return 0


def cmd_scaling(cfg, args):
    rows = blowup_scaling_report(cfg.scaling_T, cfg.scaling_t)
    write_scaling_csv(_out(args, "scaling.csv"), rows)
    c = np.array([r.c_t for r in rows])
    print(f"C={c[0]:.17g} max_rel_spread={np.max(np.abs(c - c[0])) / c[0]:.3g}")
    return 0


def cmd_theorem(cfg, args):
    v = perturbation_from_config(cfg)
    rep = theorem_rate_check(v, cfg)
    if rep.trace is not None:
        rep.trace.write_csv(_out(args, "trace.csv"))
    print(rep.summary())
    return 0


COMMANDS = {
    "spectrum": (cmd_spectrum, "mode stability report and spectrum.csv"),
    "evolve": (cmd_evolve, "evolve U(v, evolve_T) and write trace.csv"),
    "tune": (cmd_tune, "shoot for the blow-up time T*"),
    "scaling": (cmd_scaling, "blow-up rate of psi^T and scaling.csv"),
    "theorem": (cmd_theorem, "tuned decay rate against the spectral bound"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--config", help="key = value file with RunConfig fields")
    common.add_argument("--out-dir", default=".", help="directory for CSV output")
    group = common.add_argument_group("overrides (same keys as the config file)")
    for f in dataclasses.fields(cfgmod.RunConfig):
        group.add_argument(f"--{f.name}", dest=f"set_{f.name}", metavar="VALUE")

    parser = _Parser(prog="wmblowup", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_)
        if name == "evolve":
            p.add_argument("--snapshot", type=float, action="append", metavar="TAU")
    return parser


def _resolve_config(args):
    if args.config:
        try:
            cfg = cfgmod.load_config(args.config)
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from exc
    else:
        cfg = cfgmod.RunConfig()
    overrides = {}
    for f in dataclasses.fields(cfgmod.RunConfig):
        text = getattr(args, f"set_{f.name}")
        if text is not None:
            overrides[f.name] = cfgmod.parse_value(f.name, text)
    return cfg.replace(**overrides) if overrides else cfg


def run_cli(argv=None):
    try:
        args = build_parser().parse_args(argv)
        cfg = _resolve_config(args)
        if not os.path.isdir(args.out_dir):
            raise UsageError(f"output directory {args.out_dir!r} does not exist")
        return COMMANDS[args.command][0](cfg, args)
    except (UsageError, cfgmod.ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NUMERICAL as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run_cli())
