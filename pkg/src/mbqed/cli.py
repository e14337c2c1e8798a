"""Command-line interface: reproducible sweeps and reports.

Subcommands: sweep, fit, crossover, selfenergy, a2, oracle. Configuration
comes from a TOML file (--config); the --out/--format/--threads/--rel-tol
flags override it. Floats are serialized with their shortest round-trip
representation and rows are emitted in a fixed order, so identical configs
produce byte-identical output files.

Exit codes: 0 success (also with per-point warnings), 2 configuration
error, 3 numerical-regime failure on every point (or a failed oracle
check).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

import numpy as np

from mbqed import analysis, oracle, qdo, radiative, series, units
from mbqed.qdo import InvalidRegimeError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

_DEFAULT_ETAS = [1e-3, 2e-3, 5e-3, 1e-2, 2e-2]

# (R in Angstrom, eta) anchors for the trapezoid-vs-adaptive oracle check;
# chosen where the reference path keeps ~5x headroom under the 1e-8 gate.
ORACLE_ANCHORS = [(5.0, 2e-2), (10.0, 5e-3), (10.0, 1e-2), (20.0, 1e-2), (20.0, 2e-2)]
ORACLE_COEFF_ETAS = [2e-2, 1e-2, 1e-3]
ORACLE_TRAP_POINTS = 1_000_000
ORACLE_SEED = 20260817


class ConfigError(Exception):
    """Invalid or missing configuration."""


@dataclass
class RunConfig:
    """Parsed configuration for one CLI invocation."""

    atom_a: qdo.QdoParams
    atom_b: qdo.QdoParams
    eta: float
    r_angstrom: float
    sweep_r_min: float
    sweep_r_max: float
    sweep_r_count: int
    sweep_r_scale: str
    sweep_etas: list
    quad: radiative.QuadratureSpec
    cross_omega_min: float
    cross_omega_max: float
    cross_omega_count: int
    cross_r_min: float
    cross_r_max: float
    cross_r_count: int
    cross_eta: float
    out_format: str
    out_path: str | None
    threads: int


def _need_number(sec, key, default, positive=True):
    val = sec.get(key, default)
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise ConfigError(f"'{key}' must be a number, got {val!r}")
    if positive and not val > 0:
        raise ConfigError(f"'{key}' must be positive, got {val}")
    return float(val)


def _need_int(sec, key, default, minimum):
    val = sec.get(key, default)
    if isinstance(val, bool) or not isinstance(val, int):
        raise ConfigError(f"'{key}' must be an integer, got {val!r}")
    if val < minimum:
        raise ConfigError(f"'{key}' must be >= {minimum}, got {val}")
    return val


def _check_eta(value, label):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not 0.0 < value <= 1.0:
        raise ConfigError(f"{label} must lie in (0, 1], got {value!r}")
    return float(value)


def _build_atom(sec):
    if "preset" in sec:
        if sec["preset"] != "argon":
            raise ConfigError(f"unknown dimer preset {sec['preset']!r}")
        return qdo.argon()
    try:
        if "a0" in sec or "energy" in sec:
            a0 = _need_number(sec, "a0", None)
            energy = _need_number(sec, "energy", None)
            charge = _need_number(sec, "charge", 1.0)
            return qdo.QdoParams.from_polarizability(a0, energy, charge=charge)
        if "mass" in sec:
            mass = _need_number(sec, "mass", None)
            freq = _need_number(sec, "freq", None)
            charge = _need_number(sec, "charge", 1.0)
            return qdo.QdoParams(mass=mass, freq=freq, charge=charge)
    except TypeError:
        raise ConfigError("incomplete dimer parametrization") from None
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    raise ConfigError("dimer needs 'preset', ('a0', 'energy') or ('mass', 'freq', 'charge')")


def _parse_config(args):
    data = {}
    if args.config is not None:
        path = Path(args.config)
        if not path.is_file():
            raise ConfigError(f"config file not found: {path}")
        try:
            data = tomllib.loads(path.read_text())
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"invalid TOML in {path}: {exc}") from None

    dimer = data.get("dimer", {"preset": "argon"})
    if not isinstance(dimer, dict):
        raise ConfigError("'dimer' must be a table")
    atom_a = _build_atom(dimer)
    atom_b = _build_atom(dimer["b"]) if isinstance(dimer.get("b"), dict) else atom_a

    eta = _check_eta(dimer.get("eta", 1e-2), "dimer.eta")
    r_angstrom = _need_number(dimer, "r_angstrom", 10.0)

    sweep = data.get("sweep", {})
    r_min = _need_number(sweep, "r_min_angstrom", 5.0)
    r_max = _need_number(sweep, "r_max_angstrom", 100.0)
    r_count = _need_int(sweep, "r_count", 30, 2)
    if not r_min < r_max:
        raise ConfigError(f"sweep range needs r_min < r_max, got [{r_min}, {r_max}]")
    r_scale = sweep.get("r_scale", "log")
    if r_scale not in ("log", "linear"):
        raise ConfigError(f"sweep.r_scale must be 'log' or 'linear', got {r_scale!r}")
    etas = sweep.get("etas", _DEFAULT_ETAS)
    if not isinstance(etas, list) or not etas:
        raise ConfigError("sweep.etas must be a non-empty list")
    etas = sorted(_check_eta(e, "sweep.etas entry") for e in etas)

    quad_sec = data.get("quadrature", {})
    rel_tol = _need_number(quad_sec, "rel_tol", 1e-9)
    if args.rel_tol is not None:
        if not args.rel_tol > 0:
            raise ConfigError(f"--rel-tol must be positive, got {args.rel_tol}")
        rel_tol = args.rel_tol
    abs_tol = _need_number(quad_sec, "abs_tol", 1e-30)
    max_sub = _need_int(quad_sec, "max_subdivisions", 2000, 1)
    quad = radiative.QuadratureSpec(rel_tol=rel_tol, abs_tol=abs_tol, max_subdivisions=max_sub)

    cross = data.get("crossover", {})
    omega_min = _need_number(cross, "omega_min", 0.02)
    omega_max = _need_number(cross, "omega_max", 0.2)
    omega_count = _need_int(cross, "omega_count", 10, 2)
    cr_min = _need_number(cross, "r_min_angstrom", 5.0)
    cr_max = _need_number(cross, "r_max_angstrom", 500.0)
    cr_count = _need_int(cross, "r_count", 10, 2)
    if not omega_min < omega_max:
        raise ConfigError("crossover needs omega_min < omega_max")
    if not cr_min < cr_max:
        raise ConfigError("crossover needs r_min_angstrom < r_max_angstrom")
    cross_eta = _check_eta(cross.get("eta", eta), "crossover.eta")

    out = data.get("output", {})
    out_format = args.format or out.get("format", "csv")
    if out_format not in ("csv", "json"):
        raise ConfigError(f"output format must be 'csv' or 'json', got {out_format!r}")
    out_path = args.out or out.get("path")

    threads = args.threads if args.threads is not None else out.get("threads", os.cpu_count() or 1)
    if not isinstance(threads, int) or threads < 1:
        raise ConfigError(f"threads must be a positive integer, got {threads!r}")

    return RunConfig(
        atom_a=atom_a,
        atom_b=atom_b,
        eta=eta,
        r_angstrom=r_angstrom,
        sweep_r_min=r_min,
        sweep_r_max=r_max,
        sweep_r_count=r_count,
        sweep_r_scale=r_scale,
        sweep_etas=etas,
        quad=quad,
        cross_omega_min=omega_min,
        cross_omega_max=omega_max,
        cross_omega_count=omega_count,
        cross_r_min=cr_min,
        cross_r_max=cr_max,
        cross_r_count=cr_count,
        cross_eta=cross_eta,
        out_format=out_format,
        out_path=out_path,
        threads=threads,
    )


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _emit(command, columns, rows, cfg):
    if cfg.out_format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row[c]) for c in columns])
        text = buf.getvalue()
    else:
        text = json.dumps({"command": command, "rows": rows}, indent=2) + "\n"
    if cfg.out_path:
        Path(cfg.out_path).write_text(text)
    else:
        sys.stdout.write(text)


def _run_jobs(fn, jobs, threads):
    if threads <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        # map preserves submission order, keeping output deterministic.
        return list(ex.map(fn, jobs))


def _r_grid_angstrom(r_min, r_max, count, scale):
    if scale == "log":
        return np.geomspace(r_min, r_max, count)
    return np.linspace(r_min, r_max, count)


def _sweep_rows(cfg):
    grid = _r_grid_angstrom(cfg.sweep_r_min, cfg.sweep_r_max, cfg.sweep_r_count, cfg.sweep_r_scale)
    jobs = [(eta, float(r)) for eta in cfg.sweep_etas for r in grid]
    warned_hetero = [False]

    def one(job):
        eta, r_ang = job
        r_au = units.angstrom_to_bohr(r_ang)
        d = qdo.DimerSystem(a=cfg.atom_a, b=cfg.atom_b, separation_R=r_au, eta=eta)
        row = {"eta": eta, "R_angstrom": r_ang, "R_au": r_au}
        try:
            res = radiative.delta_v_int(d, cfg.quad)
        except InvalidRegimeError as exc:
            row.update(
                delta_v_int_au=math.nan,
                quad_error_au=math.nan,
                delta_v_approx_au=math.nan,
                rel_diff=math.nan,
            )
            return row, str(exc)
        row["delta_v_int_au"] = res.value
        row["quad_error_au"] = res.abs_error_estimate
        try:
            approx = series.delta_v_approx(d)
        except series.UnsupportedDimerError:
            approx = math.nan
            if not warned_hetero[0]:
                warned_hetero[0] = True
                print("warning: series approximation skipped for mixed dimer", file=sys.stderr)
        row["delta_v_approx_au"] = approx
        if math.isnan(approx):
            row["rel_diff"] = math.nan
        elif abs(res.value) <= cfg.quad.abs_tol and abs(approx) <= cfg.quad.abs_tol:
            row["rel_diff"] = 0.0
        else:
            row["rel_diff"] = abs(approx - res.value) / max(abs(res.value), 1e-300)
        return row, None

    results = _run_jobs(one, jobs, cfg.threads)
    rows = [r for r, _ in results]
    failures = [msg for _, msg in results if msg is not None]
    return rows, failures


SWEEP_COLUMNS = [
    "eta",
    "R_angstrom",
    "R_au",
    "delta_v_int_au",
    "quad_error_au",
    "delta_v_approx_au",
    "rel_diff",
]


def cmd_sweep(cfg):
    rows, failures = _sweep_rows(cfg)
    for msg in failures:
        print(f"warning: point skipped: {msg}", file=sys.stderr)
    _emit("sweep", SWEEP_COLUMNS, rows, cfg)
    if failures and len(failures) == len(rows):
        return EXIT_NUMERIC
    return EXIT_OK


def _read_sweep_csv(path):
    rows = []
    try:
        with open(path, newline="") as fh:
            for rec in csv.DictReader(fh):
                rows.append(
                    {
                        "eta": float(rec["eta"]),
                        "R_au": float(rec["R_au"]),
                        "delta_v_int_au": float(rec["delta_v_int_au"]),
                        "quad_error_au": float(rec.get("quad_error_au", 0.0) or 0.0),
                    }
                )
    except (OSError, KeyError, ValueError) as exc:
        raise ConfigError(f"cannot read sweep table {path}: {exc!r}") from None
    if not rows:
        raise ConfigError(f"sweep table {path} has no rows")
    return rows


def cmd_fit(cfg, in_path=None):
    if in_path is not None:
        rows = _read_sweep_csv(in_path)
    else:
        rows, failures = _sweep_rows(cfg)
        for msg in failures:
            print(f"warning: point skipped: {msg}", file=sys.stderr)

    etas = sorted({row["eta"] for row in rows})
    out_rows = []
    skipped = 0
    for eta in etas:
        pts = []
        usable = True
        for row in rows:
            if row["eta"] != eta:
                continue
            v = row["delta_v_int_au"]
            if math.isnan(v) or v <= 0:
                usable = False
                break
            pts.append(
                analysis.SweepPoint(R=row["R_au"], value=v, error=row.get("quad_error_au", 0.0))
            )
        if not usable or len(pts) < 3:
            skipped += 1
            print(
                f"warning: eta={eta!r} group skipped (non-positive or too few values)",
                file=sys.stderr,
            )
            continue
        fit = analysis.power_law_fit(pts)
        out_rows.append(
            {
                "eta": eta,
                "amplitude": fit.amplitude,
                "exponent": fit.exponent,
                "residual_rms": fit.residual_rms,
                "n_points": len(pts),
            }
        )
    _emit("fit", ["eta", "amplitude", "exponent", "residual_rms", "n_points"], out_rows, cfg)
    if not out_rows:
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_crossover(cfg):
    base = qdo.DimerSystem(
        a=cfg.atom_a,
        b=cfg.atom_b,
        separation_R=units.angstrom_to_bohr(cfg.r_angstrom),
        eta=cfg.cross_eta,
    )
    omegas = np.geomspace(cfg.cross_omega_min, cfg.cross_omega_max, cfg.cross_omega_count)
    rgrid = _r_grid_angstrom(cfg.cross_r_min, cfg.cross_r_max, cfg.cross_r_count, "log")
    jobs = [(float(w), float(r)) for w in omegas for r in rgrid]

    def one(job):
        w, r_ang = job
        r_au = units.angstrom_to_bohr(r_ang)
        row = {"omega_au": w, "R_angstrom": r_ang, "R_au": r_au}
        try:
            row["log10_ratio"] = analysis.crossover_ratio(base, w, r_au)
        except InvalidRegimeError as exc:
            row["log10_ratio"] = math.nan
            return row, str(exc)
        return row, None

    results = _run_jobs(one, jobs, cfg.threads)
    rows = [r for r, _ in results]
    failures = [m for _, m in results if m is not None]
    for msg in failures:
        print(f"warning: cell skipped: {msg}", file=sys.stderr)
    _emit("crossover", ["omega_au", "R_angstrom", "R_au", "log10_ratio"], rows, cfg)
    if failures and len(failures) == len(rows):
        return EXIT_NUMERIC
    return EXIT_OK


def _point_dimer(cfg):
    return qdo.DimerSystem(
        a=cfg.atom_a,
        b=cfg.atom_b,
        separation_R=units.angstrom_to_bohr(cfg.r_angstrom),
        eta=cfg.eta,
    )


def cmd_selfenergy(cfg):
    d = _point_dimer(cfg)
    rows = []
    try:
        for idx in (0, 1):
            res = radiative.delta_u_self(d, idx)
            rows.append(
                {
                    "atom_index": idx,
                    "R_angstrom": cfg.r_angstrom,
                    "eta": cfg.eta,
                    "delta_u_self_au": res.value,
                    "delta_u_self_J": units.convert_energy(
                        res.value, units.UnitSystem.ATOMIC, units.UnitSystem.SI
                    ),
                }
            )
    except InvalidRegimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    _emit(
        "selfenergy",
        ["atom_index", "R_angstrom", "eta", "delta_u_self_au", "delta_u_self_J"],
        rows,
        cfg,
    )
    return EXIT_OK


def cmd_a2(cfg):
    d = _point_dimer(cfg)
    res = radiative.delta_e_a2(d)
    rows = [
        {
            "R_angstrom": cfg.r_angstrom,
            "delta_e_a2_au": res.value,
            "delta_e_a2_J": units.convert_energy(
                res.value, units.UnitSystem.ATOMIC, units.UnitSystem.SI
            ),
        }
    ]
    _emit("a2", ["R_angstrom", "delta_e_a2_au", "delta_e_a2_J"], rows, cfg)
    return EXIT_OK


def _random_valid_dimer(rng):
    w1, w2 = rng.uniform(0.5, 2.0, size=2)
    m1, m2 = rng.uniform(0.3, 3.0, size=2)
    q1, q2 = rng.uniform(0.3, 2.0, size=2)
    gamma_target = rng.uniform(0.05, 0.35)
    g_at_unit_r = q1 * q2 / (math.sqrt(m1 * m2) * w1 * w2)
    r = (g_at_unit_r / gamma_target) ** (1.0 / 3.0)
    return qdo.DimerSystem(
        a=qdo.QdoParams(mass=m1, freq=w1, charge=q1),
        b=qdo.QdoParams(mass=m2, freq=w2, charge=q2),
        separation_R=r,
        eta=0.5,
    )


def cmd_oracle(cfg):
    from mbqed import mbd  # local import keeps CLI startup light

    reports = []

    for r_ang, eta in ORACLE_ANCHORS:
        d = qdo.DimerSystem(
            a=cfg.atom_a, b=cfg.atom_b, separation_R=units.angstrom_to_bohr(r_ang), eta=eta
        )
        main = radiative.delta_v_int(d, cfg.quad).value
        ref = oracle.trapezoid_integral(d, ORACLE_TRAP_POINTS)
        reports.append(
            oracle.compare(f"delta_v_int[R={r_ang}A,eta={eta}]", main, ref, 1e-8)
        )

    for eta in ORACLE_COEFF_ETAS:
        d = qdo.DimerSystem(
            a=cfg.atom_a, b=cfg.atom_b, separation_R=units.angstrom_to_bohr(20.0), eta=eta
        )
        co = series.coefficients(d)
        ref = oracle.coefficient_quadrature(d)
        for name, main, val in zip(("c1", "c7", "c9"), (co.c1, co.c7, co.c9), ref):
            reports.append(oracle.compare(f"{name}[eta={eta}]", main, val, 1e-10))

    rng = np.random.default_rng(ORACLE_SEED)
    worst = 0.0
    for _ in range(100):
        d = _random_valid_dimer(rng)
        main = mbd.eigenfrequencies(d)
        ref = oracle.direct_diagonalization(d)
        worst = max(worst, float(np.max(np.abs(main - ref) / ref)))
    reports.append(
        oracle.OracleReport(
            quantity="eigenfrequencies[worst-of-100]",
            main_value=worst,
            oracle_value=0.0,
            rel_diff=worst,
            passed=worst <= 1e-12,
        )
    )

    rows = oracle.report_rows(reports)
    out_path = cfg.out_path
    if out_path is None and os.environ.get("MBQED_FIXTURES"):
        out_path = str(Path(os.environ["MBQED_FIXTURES"]) / "oracle_report.json")
    text = json.dumps({"command": "oracle", "rows": rows}, indent=2) + "\n"
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)
    n_failed = sum(1 for r in reports if not r.passed)
    if n_failed:
        print(f"error: {n_failed} oracle check(s) failed", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="mbqed",
        description="Radiative interaction of two harmonically bound charges: "
        "sweeps, fits, crossover maps and reference checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("sweep", "interaction energy over an (eta, R) grid"),
        ("fit", "power-law fit per eta group"),
        ("crossover", "log10 radiative/London ratio over an (omega, R) grid"),
        ("selfenergy", "per-oscillator self-energies at one configuration"),
        ("a2", "two-photon shift at one configuration"),
        ("oracle", "main-vs-reference numerical checks"),
    ):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("--config", default=None, help="TOML configuration file")
        sp.add_argument("--out", default=None, help="output file (default: stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default=None)
        sp.add_argument("--threads", type=int, default=None)
        sp.add_argument("--rel-tol", type=float, default=None, dest="rel_tol")
        if name == "fit":
            sp.add_argument("--in", dest="in_path", default=None, help="sweep CSV to fit")

    args = parser.parse_args(argv)
    try:
        cfg = _parse_config(args)
        if args.command == "sweep":
            return cmd_sweep(cfg)
        if args.command == "fit":
            return cmd_fit(cfg, in_path=args.in_path)
        if args.command == "crossover":
            return cmd_crossover(cfg)
        if args.command == "selfenergy":
            return cmd_selfenergy(cfg)
        if args.command == "a2":
            return cmd_a2(cfg)
        return cmd_oracle(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    raise SystemExit(main())
