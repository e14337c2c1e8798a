"""Command-line interface: formats, determinism, exit codes."""

import csv
import json
import math
import shutil
import subprocess
import sys

import pytest

from mbqed import cli, qdo, radiative, units

SWEEP_TOML = """
[dimer]
preset = "argon"
eta = 1e-2

[sweep]
r_min_angstrom = 8.0
r_max_angstrom = 40.0
r_count = 6
r_scale = "log"
etas = [1e-2, 2e-2]
"""


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


def _run(args):
    return cli.main([str(a) for a in args])


def test_sweep_csv_shape(tmp_path, capsys):
    cfg = _write(tmp_path, "cfg.toml", SWEEP_TOML)
    out = tmp_path / "sweep.csv"
    assert _run(["sweep", "--config", cfg, "--out", out]) == 0
    with open(out, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == [
        "eta",
        "R_angstrom",
        "R_au",
        "delta_v_int_au",
        "quad_error_au",
        "delta_v_approx_au",
        "rel_diff",
    ]
    assert len(rows) == 1 + 2 * 6
    # eta outer ascending, R inner ascending
    etas = [float(r[0]) for r in rows[1:]]
    assert etas == sorted(etas)
    first = [float(r[1]) for r in rows[1:7]]
    assert first == sorted(first)
    # values agree with the library
    d = qdo.argon_dimer(float(rows[1][1]), float(rows[1][0]))
    assert float(rows[1][3]) == pytest.approx(radiative.delta_v_int(d).value, rel=1e-12)
    for r in rows[1:]:
        assert float(r[6]) < 0.05  # series tracks quadrature on this grid


def test_sweep_deterministic_across_threads(tmp_path):
    cfg = _write(tmp_path, "cfg.toml", SWEEP_TOML)
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    assert _run(["sweep", "--config", cfg, "--out", out1, "--threads", "1"]) == 0
    assert _run(["sweep", "--config", cfg, "--out", out2, "--threads", "4"]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_sweep_json_round_trips(tmp_path):
    cfg = _write(tmp_path, "cfg.toml", SWEEP_TOML)
    out = tmp_path / "sweep.json"
    assert _run(["sweep", "--config", cfg, "--out", out, "--format", "json"]) == 0
    payload = json.loads(out.read_text())
    assert payload["command"] == "sweep"
    assert len(payload["rows"]) == 12
    assert all(row["delta_v_int_au"] > 0 for row in payload["rows"])


def test_sweep_defaults_to_stdout(capsys):
    rc = _run(["sweep"])  # built-in argon defaults
    assert rc == 0
    got = capsys.readouterr().out
    header = got.splitlines()[0]
    assert header.startswith("eta,R_angstrom,R_au,")
    assert len(got.splitlines()) == 1 + 5 * 30


def test_sweep_zero_coupling_rows(tmp_path):
    cfg = _write(
        tmp_path,
        "cfg.toml",
        """
[sweep]
r_min_angstrom = 1e109
r_max_angstrom = 1e110
r_count = 3
etas = [1e-2]
""",
    )
    out = tmp_path / "zero.csv"
    assert _run(["sweep", "--config", cfg, "--out", out]) == 0
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    for row in rows:
        assert float(row["delta_v_int_au"]) == 0.0
        assert float(row["rel_diff"]) == 0.0


def test_sweep_all_invalid_exits_3(tmp_path, capsys):
    cfg = _write(
        tmp_path,
        "cfg.toml",
        """
[sweep]
r_min_angstrom = 1.0
r_max_angstrom = 1.4
r_count = 3
etas = [1e-2]
""",
    )
    out = tmp_path / "bad.csv"
    assert _run(["sweep", "--config", cfg, "--out", out]) == 3
    err = capsys.readouterr().err
    assert "skipped" in err
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert all(math.isnan(float(r["delta_v_int_au"])) for r in rows)


@pytest.mark.parametrize(
    "text",
    [
        "[dimer]\npreset = 'neon'\n",
        "[dimer]\neta = 1.5\n",
        "[dimer]\nmass = -1.0\nfreq = 0.07\ncharge = 1.0\n",
        "[sweep]\nr_min_angstrom = 50.0\nr_max_angstrom = 5.0\n",
        "[sweep]\nr_scale = 'cubic'\n",
        "[output]\nformat = 'yaml'\n",
        "not toml at all [",
    ],
)
def test_bad_config_exits_2(tmp_path, capsys, text):
    cfg = _write(tmp_path, "cfg.toml", text)
    assert _run(["sweep", "--config", cfg]) == 2
    assert "config error" in capsys.readouterr().err


def test_missing_config_exits_2(tmp_path, capsys):
    assert _run(["sweep", "--config", tmp_path / "absent.toml"]) == 2


def test_fit_from_sweep_csv(tmp_path, capsys):
    cfg = _write(tmp_path, "cfg.toml", SWEEP_TOML)
    table = tmp_path / "sweep.csv"
    assert _run(["sweep", "--config", cfg, "--out", table]) == 0
    out = tmp_path / "fit.csv"
    assert _run(["fit", "--in", table, "--out", out]) == 0
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert [float(r["eta"]) for r in rows] == [1e-2, 2e-2]
    for r in rows:
        assert -3.0 < float(r["exponent"]) < -0.9
        assert int(r["n_points"]) == 6
        assert float(r["amplitude"]) > 0


def test_fit_without_table_runs_sweep(tmp_path):
    cfg = _write(tmp_path, "cfg.toml", SWEEP_TOML)
    out = tmp_path / "fit.csv"
    assert _run(["fit", "--config", cfg, "--out", out]) == 0
    with open(out, newline="") as fh:
        assert len(list(csv.DictReader(fh))) == 2


def test_crossover_table(tmp_path):
    cfg = _write(
        tmp_path,
        "cfg.toml",
        """
[crossover]
omega_min = 0.05
omega_max = 0.2
omega_count = 3
r_min_angstrom = 20.0
r_max_angstrom = 500.0
r_count = 4
eta = 1e-2
""",
    )
    out = tmp_path / "cross.csv"
    assert _run(["crossover", "--config", cfg, "--out", out]) == 0
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 12
    by_omega = {}
    for r in rows:
        by_omega.setdefault(float(r["omega_au"]), []).append(float(r["log10_ratio"]))
    for vals in by_omega.values():
        assert vals == sorted(vals)  # ratio grows with R


def test_selfenergy_report(tmp_path):
    out = tmp_path / "self.json"
    assert _run(["selfenergy", "--out", out, "--format", "json"]) == 0
    rows = json.loads(out.read_text())["rows"]
    assert [r["atom_index"] for r in rows] == [0, 1]
    d = qdo.argon_dimer(10.0, 1e-2)
    expect = radiative.delta_u_self(d, 0).value
    assert rows[0]["delta_u_self_au"] == pytest.approx(expect, rel=1e-12)
    assert rows[0]["delta_u_self_J"] == pytest.approx(expect * units.HARTREE_SI, rel=1e-12)


def test_a2_report(tmp_path):
    out = tmp_path / "a2.json"
    assert _run(["a2", "--out", out, "--format", "json"]) == 0
    row = json.loads(out.read_text())["rows"][0]
    d = qdo.argon_dimer(10.0, 1e-2)
    assert row["delta_e_a2_au"] == pytest.approx(radiative.delta_e_a2(d).value, rel=1e-12)
    assert row["delta_e_a2_au"] < 0


def test_rel_tol_flag_tightens_quadrature(tmp_path):
    cfg = _write(tmp_path, "cfg.toml", SWEEP_TOML)
    loose = tmp_path / "loose.csv"
    tight = tmp_path / "tight.csv"
    assert _run(["sweep", "--config", cfg, "--out", loose, "--rel-tol", "1e-6"]) == 0
    assert _run(["sweep", "--config", cfg, "--out", tight, "--rel-tol", "1e-12"]) == 0
    with open(loose, newline="") as fh:
        e_loose = [float(r["quad_error_au"]) for r in csv.DictReader(fh)]
    with open(tight, newline="") as fh:
        e_tight = [float(r["quad_error_au"]) for r in csv.DictReader(fh)]
    assert all(t <= l for t, l in zip(e_tight, e_loose))
    assert sum(e_tight) < sum(e_loose)


def test_oracle_subcommand_passes(tmp_path):
    out = tmp_path / "oracle.json"
    assert _run(["oracle", "--out", out]) == 0
    rows = json.loads(out.read_text())["rows"]
    assert rows and all(r["passed"] for r in rows)
    names = {r["quantity"] for r in rows}
    assert any(n.startswith("delta_v_int") for n in names)
    assert any(n.startswith("c1") for n in names)
    assert any(n.startswith("eigenfrequencies") for n in names)


@pytest.mark.skipif(shutil.which("mbqed") is None, reason="console script not on PATH")
def test_console_entry_point(tmp_path):
    cfg = _write(tmp_path, "cfg.toml", SWEEP_TOML)
    out = tmp_path / "sweep.csv"
    proc = subprocess.run(
        ["mbqed", "sweep", "--config", str(cfg), "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert out.exists()
