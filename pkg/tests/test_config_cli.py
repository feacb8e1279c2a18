import os

import pytest

from wmblowup import _io
from wmblowup.cli import run_cli
from wmblowup.config import ConfigError, RunConfig, format_config, load_config, parse_config
from wmblowup.mode_stability import Region


def test_defaults():
    c = RunConfig()
    assert (c.grid_n, c.grid_n_hi, c.tau_f) == (32, 48, 10.0)
    assert c.region == Region(-1.0, 2.0, 10.0)


def test_parse_and_format_round_trip():
    text = """
    # comment line
    grid_n = 40   # trailing comment
    grid_n_hi = 56
    region = -1.5, 2.5, 12
    data_family = selfsimilar
    T_prime = 0.9
    T_bracket = 0.8, 1.2
    """
    c = parse_config(text)
    assert c.grid_n == 40 and c.region == Region(-1.5, 2.5, 12.0)
    assert c.T_bracket == (0.8, 1.2)
    assert parse_config(format_config(c)) == c


@pytest.mark.parametrize(
    "text,line",
    [
        ("grid_n = 32\nbogus = 1\n", 2),
        ("grid_n = 32\n\n# x\ngrid_n_hi\n", 4),
        ("tau_f = abc\n", 1),
        ("grid_n = 40\ngrid_n = 48\n", 2),
    ],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ConfigError) as info:
        parse_config(text)
    assert info.value.line == line


def test_invariants():
    with pytest.raises(ConfigError):
        RunConfig(grid_n=48, grid_n_hi=48)
    with pytest.raises(ConfigError):
        RunConfig(grid_n=16, grid_n_hi=48)
    with pytest.raises(ConfigError):
        RunConfig(match_tol=0.0)
    with pytest.raises(ConfigError):
        RunConfig(data_family="file")


def _cfg(tmp_path, text):
    p = tmp_path / "run.cfg"
    p.write_text(text)
    return str(p)


def test_cli_spectrum(tmp_path, capsys):
    cfg = _cfg(tmp_path, "grid_n = 32\ngrid_n_hi = 48\n")
    assert run_cli(["spectrum", "--config", cfg, "--out-dir", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("mode_stable=true s0=-0.54")
    first = (tmp_path / "spectrum.csv").read_bytes()
    assert run_cli(["spectrum", "--config", cfg, "--out-dir", str(tmp_path)]) == 0
    assert (tmp_path / "spectrum.csv").read_bytes() == first


def test_cli_tune_selfsimilar(tmp_path, capsys):
    cfg = _cfg(tmp_path, "data_family = selfsimilar\nT_prime = 1.05\ntau_f = 5\n")
    assert run_cli(["tune", "--config", cfg, "--out-dir", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("T_star=1.0")
    T = float(out.split()[0].split("=")[1])
    assert abs(T - 1.05) < 1e-6
    cols = _io.read_csv(tmp_path / "trace.csv")
    assert list(cols) == ["tau", "norm_H", "gauge_coeff"]


def test_cli_evolve_and_overrides(tmp_path, capsys):
    args = ["evolve", "--out-dir", str(tmp_path), "--tau_end", "0.5", "--eps", "1e-2", "--snapshot", "0.25"]
    assert run_cli(args) == 0
    a = (tmp_path / "trace.csv").read_bytes()
    assert (tmp_path / "state_tau=0.25.csv").exists()
    assert run_cli(args) == 0
    assert (tmp_path / "trace.csv").read_bytes() == a
    assert "status=ok" in capsys.readouterr().out


def test_cli_scaling(tmp_path, capsys):
    assert run_cli(["scaling", "--out-dir", str(tmp_path)]) == 0
    cols = _io.read_csv(tmp_path / "scaling.csv")
    assert len(cols["c_t"]) == 4
    assert "max_rel_spread" in capsys.readouterr().out


def test_cli_theorem_trivial(tmp_path, capsys):
    assert run_cli(["theorem", "--out-dir", str(tmp_path), "--eps", "0"]) == 0
    assert "status=trivial data" in capsys.readouterr().out


def test_cli_usage_errors(tmp_path, capsys):
    assert run_cli(["spectrum", "--config", str(tmp_path / "missing.cfg")]) == 2
    bad = _cfg(tmp_path, "grid_n = 32\nnot_a_key = 3\n")
    assert run_cli(["spectrum", "--config", bad]) == 2
    assert ":2:" in capsys.readouterr().err
    assert run_cli([]) == 2
    assert run_cli(["frobnicate"]) == 2
    assert run_cli(["spectrum", "--grid_n", "nan"]) == 2
    assert run_cli(["spectrum", "--out-dir", str(tmp_path / "nope")]) == 2


def test_cli_numerical_failure(tmp_path, capsys):
    args = ["tune", "--out-dir", str(tmp_path), "--data_family", "selfsimilar",
            "--T_bracket", "0.6, 0.7", "--tau_f", "2"]
    assert run_cli(args) == 1
    assert "numerical failure" in capsys.readouterr().err


def test_cli_no_partial_files(tmp_path):
    run_cli(["spectrum", "--out-dir", str(tmp_path)])
    assert not [f for f in os.listdir(tmp_path) if f.startswith(".tmp-")]
