"""Brute-force reference implementations.

Independent cross-checks for the main numerical paths: a fixed-grid
trapezoid integral of the radiative integrand, direct 2x2 diagonalization
via the quadratic formula, and numerical quadrature of the per-kbar
coefficient functions. Everything here is deliberately plain (uniform
grids, naive mode sums, textbook formulas) and shares no numerical code
with the main modules; only the parameter plumbing in mbqed.qdo is reused.

Derived reference values consumed by the test suite are produced by these
operations and frozen into a versioned JSON fixtures file (see
scripts/gen_fixtures.py); the MBQED_FIXTURES environment variable points
readers at the fixtures directory.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from mbqed import qdo, units

_REL_DIFF_FLOOR = 1e-300
_COEFF_GRID = 32769  # Simpson nodes; h^4 ~ 1e-18 on [0, 1]

_trapezoid = getattr(np, "trapezoid", None) or np.trapz


@dataclass(frozen=True)
class OracleReport:
    """One main-vs-oracle comparison.

    rel_diff = |main - oracle| / max(|oracle|, 1e-300). ``passed`` states
    whether rel_diff met the tolerance the check was run with.
    """

    quantity: str
    main_value: float
    oracle_value: float
    rel_diff: float
    passed: bool


def compare(quantity, main_value, oracle_value, tolerance) -> OracleReport:
    """Build an OracleReport for one quantity at a stated tolerance."""
    rel = abs(main_value - oracle_value) / max(abs(oracle_value), _REL_DIFF_FLOOR)
    return OracleReport(
        quantity=quantity,
        main_value=float(main_value),
        oracle_value=float(oracle_value),
        rel_diff=float(rel),
        passed=bool(rel <= tolerance),
    )


# Reference angular kernels: 4-term polynomials below x = 0.1, closed form
# above. Different switch point and term count from the main backend on
# purpose.
def _f_perp_ref(x):
    out = np.empty_like(x)
    small = x < 0.1
    xs = x[small]
    u = xs * xs
    out[small] = 2.0 / 3.0 + u * (-2.0 / 15.0 + u * (1.0 / 140.0 - u / 5670.0))
    xl = x[~small]
    out[~small] = (xl * np.cos(xl) + (xl * xl - 1.0) * np.sin(xl)) / xl**3
    return out


def _f_par_ref(x):
    out = np.empty_like(x)
    small = x < 0.1
    xs = x[small]
    u = xs * xs
    out[small] = 2.0 / 3.0 + u * (-1.0 / 15.0 + u * (1.0 / 420.0 - u / 22680.0))
    xl = x[~small]
    out[~small] = 2.0 * (np.sin(xl) - xl * np.cos(xl)) / xl**3
    return out


def _integrand_ref(kb, gamma, tau, b):
    """Naive six-mode assembly of the exact integrand (homoatomic)."""
    s1p = math.sqrt(1.0 + gamma)
    s1m = math.sqrt(1.0 - gamma)
    s2p = math.sqrt(1.0 + 2.0 * gamma)
    s2m = math.sqrt(1.0 - 2.0 * gamma)
    x = tau * kb
    fperp = _f_perp_ref(x)
    fpar = _f_par_ref(x)

    def g(s):
        return s / (kb + s * b)

    return kb * (fperp * (g(s1p) - g(s1m)) - 0.5 * fpar * (g(s2p) - g(s2m)))


def trapezoid_integral(d: qdo.DimerSystem, n_points: int) -> float:
    """Fixed-grid trapezoid reference for the radiative interaction, a.u.

    Uniform kbar grid with n_points nodes on [0, 1]; the kbar = 0 node is
    set to the analytic limit 0. Identical oscillators only. The energy
    prefactor is re-derived from charges and masses rather than through
    polarizabilities, so the scale is cross-checked along with the
    integral.
    """
    if n_points < 1000:
        raise ValueError(f"n_points must be >= 1000, got {n_points}")
    if not qdo.is_homoatomic(d):
        raise ValueError("trapezoid reference requires identical oscillators")
    gamma = qdo.coupling_gamma(d)[0]
    if gamma == 0.0:
        return 0.0
    k_m = qdo.cutoff_wavenumber(d)
    t = k_m * d.separation_R
    b = d.a.freq / (units.C_ATOMIC * k_m)
    scale = (
        units.ALPHA_FSC**2
        * d.a.charge
        * d.b.charge
        * math.sqrt(d.a.freq * d.b.freq)
        * k_m
        / (math.pi * math.sqrt(d.a.mass * d.b.mass))
    )
    kb = np.linspace(0.0, 1.0, n_points)
    vals = _integrand_ref(kb, gamma, t, b)
    vals[0] = 0.0
    return -scale * float(_trapezoid(vals, kb))


def direct_diagonalization(d: qdo.DimerSystem) -> np.ndarray:
    """Six mode frequencies from the quadratic formula on each 2x2 block.

    Builds the per-axis potential blocks numerically and solves their
    characteristic polynomials with the textbook formula (no cancellation
    tricks), independent of the closed-form eigenvalue path.
    """
    w1, w2 = d.a.freq, d.b.freq
    g = d.a.charge * d.b.charge / (
        math.sqrt(d.a.mass * d.b.mass) * w1 * w2 * d.separation_R**3
    )
    freqs = []
    for gi in (g, g, -2.0 * g):
        a = w1 * w1
        c = w2 * w2
        bb = gi * w1 * w2
        tr = a + c
        det = a * c - bb * bb
        disc = math.sqrt(tr * tr - 4.0 * det)
        freqs.append(math.sqrt((tr + disc) / 2.0))
        freqs.append(math.sqrt((tr - disc) / 2.0))
    return np.array(freqs)


def _simpson(y, h):
    n = len(y)
    if n % 2 == 0:
        raise ValueError("Simpson rule needs an odd node count")
    return h / 3.0 * (y[0] + y[-1] + 4.0 * np.sum(y[1:-1:2]) + 2.0 * np.sum(y[2:-1:2]))


def coefficient_quadrature(d: qdo.DimerSystem):
    """(c1, c7, c9) from Simpson quadrature of the per-kbar coefficients.

    Integrates, on a fixed 32769-node grid,

        c1_int(kbar) = -A0 k_M^2 kbar^4 / (15 (kbar + b)^2)
        c7_int(kbar) = +A0^3 k_M^2 kbar^4 (kbar^2 + 4 kbar b + 5 b^2) / (60 (kbar + b)^4)
        c9_int(kbar) = -A0^3 kbar^2 (kbar^2 + 4 kbar b + 5 b^2) / (4 (kbar + b)^4)

    with b = kbar_q, and returns c_i = -integral(c_i_int). This settles the
    closed forms (signs included) by direct integration.
    """
    if not qdo.is_homoatomic(d):
        raise ValueError("coefficient reference requires identical oscillators")
    a0 = d.a.charge**2 / (d.a.mass * d.a.freq**2)
    lam = math.sqrt(1.0 / (2.0 * d.a.mass * d.a.freq))
    k_m = d.eta / lam
    b = d.a.freq / (units.C_ATOMIC * k_m)
    kb = np.linspace(0.0, 1.0, _COEFF_GRID)
    h = kb[1] - kb[0]
    dd = kb + b
    poly = kb * kb + 4.0 * kb * b + 5.0 * b * b
    c1_int = -a0 * k_m**2 * kb**4 / (15.0 * dd**2)
    c7_int = a0**3 * k_m**2 * kb**4 * poly / (60.0 * dd**4)
    c9_int = -(a0**3) * kb**2 * poly / (4.0 * dd**4)
    return tuple(-float(_simpson(y, h)) for y in (c1_int, c7_int, c9_int))


def fixture_record(quantity, inputs, value, method, grid_size):
    """One JSON-ready fixture record."""
    return {
        "quantity": quantity,
        "inputs": inputs,
        "value": value,
        "method": method,
        "grid_size": grid_size,
    }


def write_fixtures(path, records):
    """Write fixture records as versioned JSON."""
    payload = {"version": 1, "records": list(records)}
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def load_fixtures(path):
    """Load a fixtures file into a dict keyed by quantity name."""
    payload = json.loads(Path(path).read_text())
    if payload.get("version") != 1:
        raise ValueError(f"unsupported fixtures version in {path}")
    return {rec["quantity"]: rec for rec in payload["records"]}


def report_rows(reports):
    """OracleReports as plain dicts (JSON/CSV friendly)."""
    return [asdict(r) for r in reports]
