#!/usr/bin/env python3
"""Regenerate tests/fixtures/derived_values.json.

Every record is computed independently of the library's main code paths:
closed expressions are evaluated with mpmath at 50 significant digits, and
integral references come from the fixed-grid reference integrators in
mbqed.oracle (uniform trapezoid, Simpson). Main-path tests consume these
frozen values; they are never regenerated implicitly.

Run from the repository root:

    python3 scripts/gen_fixtures.py
"""

import math
from pathlib import Path

import mpmath as mp

from mbqed import oracle, qdo, units

mp.mp.dps = 50

ALPHA = mp.mpf("7.2973525693e-3")
C_AT = 1 / ALPHA
HARTREE_J = mp.mpf("4.3597447222071e-18")
BOHR_M = mp.mpf("5.29177210903e-11")

ARGON_A0 = mp.mpf("11.1")
ARGON_W = mp.mpf("0.07")
ARGON_RATIO = mp.mpf("2.52e-3")  # fixed cutoff ratio omega/(c k_M) * eta

TRAP_ANCHORS = [(5.0, 2e-2), (10.0, 5e-3), (10.0, 1e-2), (20.0, 1e-2), (20.0, 2e-2)]
COEFF_ETAS = [2e-2, 1e-2, 1e-3]
TRAP_POINTS = 1_000_000


def fperp(x):
    return (x * mp.cos(x) + (x * x - 1) * mp.sin(x)) / x**3


def fpar(x):
    return 2 * (mp.sin(x) - x * mp.cos(x)) / x**3


def integrand_naive(kbar, gamma, tau, b):
    """Plain mode-sum integrand; exact at 50 digits, no rearrangement."""
    x = tau * kbar
    fp = fperp(x)
    fl = fpar(x)

    def term(s):
        return s / (kbar + s * b)

    s1p, s1m = mp.sqrt(1 + gamma), mp.sqrt(1 - gamma)
    s2p, s2m = mp.sqrt(1 + 2 * gamma), mp.sqrt(1 - 2 * gamma)
    return kbar * (fp * (term(s1p) - term(s1m)) - mp.mpf("0.5") * fl * (term(s2p) - term(s2m)))


def argon_triplet():
    lam = ARGON_RATIO * C_AT / ARGON_W
    mass = 1 / (2 * lam * lam * ARGON_W)
    charge = mp.sqrt(ARGON_A0 * ARGON_W / (2 * lam * lam))
    return lam, mass, charge


def angstrom_to_au(r_ang):
    return mp.mpf(r_ang) * mp.mpf("1e-10") / BOHR_M


def main():
    records = []

    def add(quantity, inputs, value, method, grid_size=None):
        records.append(oracle.fixture_record(quantity, inputs, value, method, grid_size))

    # f-kernel spot values on both evaluation branches.
    for x in (1e-4, 2.0):
        xm = mp.mpf(x)
        add(f"f_perp[x={x!r}]", {"x": x}, float(fperp(xm)), "mpmath-dps50")
        add(f"f_par[x={x!r}]", {"x": x}, float(fpar(xm)), "mpmath-dps50")

    # Integrand spot values: series branch, trig branch, tiny coupling.
    spots = [
        (0.01, 0.1, 0.252, 0.5),
        (0.01, 3.0, 0.252, 0.5),
        (1e-6, 0.05, 2.52, 0.5),
    ]
    for gamma, tau, b, kbar in spots:
        val = integrand_naive(mp.mpf(kbar), mp.mpf(gamma), mp.mpf(tau), mp.mpf(b))
        add(
            f"integrand[gamma={gamma!r},tau={tau!r},kbar_q={b!r},kbar={kbar!r}]",
            {"gamma": gamma, "tau": tau, "kbar_q": b, "kbar": kbar},
            float(val),
            "mpmath-dps50",
        )

    # Argon preset parameters.
    lam, mass, charge = argon_triplet()
    add(
        "argon_preset",
        {"a0": 11.1, "freq": 0.07, "cutoff_ratio": 2.52e-3},
        {"length": float(lam), "mass": float(mass), "charge": float(charge)},
        "mpmath-dps50",
    )

    # Mixed-dimer mode frequencies: w1=1, w2=2, per-axis couplings
    # (0.1, 0.1, -0.2), ordered (x+, x-, y+, y-, z+, z-).
    w1sq, w2sq = mp.mpf(1), mp.mpf(4)
    freqs = []
    for g in (mp.mpf("0.1"), mp.mpf("0.1"), mp.mpf("-0.2")):
        tr = w1sq + w2sq
        det = w1sq * w2sq * (1 - g * g)
        disc = mp.sqrt((w1sq - w2sq) ** 2 + 4 * g * g * w1sq * w2sq)
        kp = (tr + disc) / 2
        km = det / kp
        freqs.extend([mp.sqrt(kp), mp.sqrt(km)])
    add(
        "hetero_eigenfreqs",
        {"w1": 1.0, "w2": 2.0, "gamma_transverse": 0.1},
        [float(f) for f in freqs],
        "mpmath-dps50",
    )

    # Trapezoid references for the radiative integral at the anchor set.
    atom = qdo.argon()
    for r_ang, eta in TRAP_ANCHORS:
        d = qdo.DimerSystem(
            a=atom, b=atom, separation_R=units.angstrom_to_bohr(r_ang), eta=eta
        )
        val = oracle.trapezoid_integral(d, TRAP_POINTS)
        add(
            f"delta_v_int_trapezoid[R={r_ang!r}A,eta={eta!r}]",
            {"r_angstrom": r_ang, "eta": eta},
            val,
            "trapezoid-uniform",
            TRAP_POINTS,
        )

    # Simpson references for the closed coefficients.
    for eta in COEFF_ETAS:
        d = qdo.DimerSystem(
            a=atom, b=atom, separation_R=units.angstrom_to_bohr(20.0), eta=eta
        )
        c1, c7, c9 = oracle.coefficient_quadrature(d)
        for name, val in (("c1", c1), ("c7", c7), ("c9", c9)):
            add(
                f"{name}_quadrature[eta={eta!r}]",
                {"eta": eta},
                val,
                "simpson",
                32769,
            )

    # Two-photon shift magnitude and its ratio to the radiative term,
    # argon at R = 10 A, eta = 1e-2.
    r10 = angstrom_to_au(10.0)
    a2 = ALPHA**3 * charge**4 / (4 * mp.pi * mass**2 * r10**3)
    add(
        "a2_magnitude[R=10.0A]",
        {"r_angstrom": 10.0},
        float(a2),
        "mpmath-dps50",
    )
    d10 = qdo.DimerSystem(a=atom, b=atom, separation_R=units.angstrom_to_bohr(10.0), eta=1e-2)
    trap10 = oracle.trapezoid_integral(d10, TRAP_POINTS)
    add(
        "a2_ratio[R=10.0A,eta=0.01]",
        {"r_angstrom": 10.0, "eta": 1e-2},
        trap10 / float(a2),
        "trapezoid-uniform/mpmath",
        TRAP_POINTS,
    )

    # Uncoupled-limit self-energy: 3 modes per polarization pair collapse to
    # (alpha^3 q^2 w^2 / (pi m)) * log1p(eta / cutoff_ratio), eta = 1e-2.
    eta = mp.mpf(1e-2)
    self0 = ALPHA**3 * charge**2 * ARGON_W**2 / (mp.pi * mass) * mp.log(1 + eta / ARGON_RATIO)
    add(
        "delta_u_self_uncoupled[eta=0.01]",
        {"eta": 1e-2},
        float(self0),
        "mpmath-dps50",
    )

    # Energy scale of the radiative integral in joules, eta = 1e-2:
    # alpha^2 k_M q^2 w / (pi m) hartree.
    k_m = eta / lam
    scale_j = ALPHA**2 * k_m * charge**2 * ARGON_W / (mp.pi * mass) * HARTREE_J
    add(
        "energy_scale_si[eta=0.01]",
        {"eta": 1e-2},
        float(scale_j),
        "mpmath-dps50",
    )

    out = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "derived_values.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    oracle.write_fixtures(out, records)
    print(f"wrote {len(records)} records to {out}")

    # Informational cross-check against the live library (not a gate).
    from mbqed import radiative

    worst = 0.0
    for rec in records:
        if not rec["quantity"].startswith("integrand["):
            continue
        inp = rec["inputs"]
        got = radiative.integrand(inp["kbar"], inp["gamma"], inp["tau"], inp["kbar_q"])
        rel = abs(got - rec["value"]) / abs(rec["value"])
        worst = max(worst, rel)
        print(f"  {rec['quantity']}: rel diff {rel:.3e}")
    print(f"worst integrand spot rel diff: {worst:.3e}")
    if not math.isfinite(worst) or worst > 1e-12:
        print("WARNING: integrand spots disagree beyond 1e-12")


if __name__ == "__main__":
    main()
