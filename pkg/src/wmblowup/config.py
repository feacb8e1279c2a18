"""Run configuration: flat ``key = value`` text, one key per RunConfig field."""

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Optional

from .mode_stability import MATCH_TOL, RESIDUAL_TOL, Region

FAMILIES = ("selfsimilar", "bump", "file")


class ConfigError(ValueError):
    """Malformed or inconsistent configuration; ``line`` is 1-based when known."""

    def __init__(self, message, line=None, path=None):
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.line = line


@dataclass(frozen=True)
class RunConfig:
    grid_n: int = 32
    grid_n_hi: int = 48
    region: Region = field(default_factory=Region)
    tau_f: float = 10.0
    root_tol: float = 1e-14
    residual_tol: float = RESIDUAL_TOL
    match_tol: float = MATCH_TOL
    cfl_safety: float = 0.2
    data_family: str = "bump"
    T_prime: float = 1.05
    eps: float = 1e-3
    mu: float = 0.5
    sigma: float = 0.2
    path: Optional[str] = None
    T_bracket: tuple = (0.75, 1.3)
    tau_end: float = 15.0
    evolve_mode: str = "nonlinear"
    evolve_T: float = 1.0
    sample_every: int = 50
    scaling_T: float = 1.0
    scaling_t: tuple = (0.0, 0.9, 0.99, 0.999)

    def __post_init__(self):
        if not self.grid_n_hi > self.grid_n >= 32:
            raise ConfigError("need grid_n_hi > grid_n >= 32")
        for name in ("root_tol", "residual_tol", "match_tol", "cfl_safety", "tau_f", "tau_end"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive")
        if self.data_family not in FAMILIES:
            raise ConfigError(f"data_family must be one of {', '.join(FAMILIES)}")
        if self.data_family == "file" and not self.path:
            raise ConfigError("data_family = file needs a path")
        if self.evolve_mode not in ("linear", "nonlinear"):
            raise ConfigError("evolve_mode must be linear or nonlinear")
        if self.sample_every < 1:
            raise ConfigError("sample_every must be at least 1")
        if len(self.T_bracket) != 2:
            raise ConfigError("T_bracket needs two values")

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)


_FIELDS = {f.name: f for f in dataclasses.fields(RunConfig)}


def _floats(text):
    return tuple(float(x) for x in text.replace(",", " ").split())


def _parse_value(key, text):
    if key in ("grid_n", "grid_n_hi", "sample_every"):
        val = float(text)
        if val != int(val):
            raise ValueError(f"{key} must be an integer")
        return int(val)
    if key == "region":
        vals = _floats(text)
        if len(vals) != 3:
            raise ValueError("region needs re_min, re_max, im_max")
        return Region(*vals)
    if key in ("T_bracket", "scaling_t"):
        return _floats(text)
    if key in ("data_family", "evolve_mode", "path"):
        return text
    val = float(text)
    if not math.isfinite(val):
        raise ValueError(f"{key} must be finite")
    return val


def parse_value(key, text):
    """Convert the text form of one field; raises ``ConfigError`` on unknown keys."""
    if key not in _FIELDS:
        raise ConfigError(f"unknown key {key!r}")
    try:
        return _parse_value(key, text.strip())
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {exc}") from exc


def parse_config(text, path=None):
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("expected 'key = value'", lineno, path)
        key, _, val = line.partition("=")
        key = key.strip()
        if key not in _FIELDS:
            raise ConfigError(f"unknown key {key!r}", lineno, path)
        if key in values:
            raise ConfigError(f"duplicate key {key!r}", lineno, path)
        try:
            values[key] = _parse_value(key, val.strip())
        except ValueError as exc:
            raise ConfigError(f"bad value for {key}: {exc}", lineno, path) from exc
    return RunConfig(**values)


def load_config(path):
    with open(path) as fh:
        return parse_config(fh.read(), path)


def format_config(cfg):
    """Text form that :func:`parse_config` reads back to an equal config."""
    lines = []
    for f in dataclasses.fields(cfg):
        val = getattr(cfg, f.name)
        if val is None:
            continue
        if isinstance(val, Region):
            val = f"{val.re_min!r}, {val.re_max!r}, {val.im_max!r}"
        elif isinstance(val, tuple):
            val = ", ".join(repr(x) for x in val)
        elif isinstance(val, float):
            val = repr(val)
        lines.append(f"{f.name} = {val}")
    return "\n".join(lines) + "\n"
