"""Downstream science products.

Power-law fits of distance sweeps, the crossover ratio between the
radiative 1/R term and London dispersion, per-oscillator effective
charges, and laboratory-scale force estimates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from mbqed import qdo, series, units


@dataclass(frozen=True)
class SweepPoint:
    """One sweep sample: separation R (a.u.), energy value and its error."""

    R: float
    value: float
    error: float = 0.0

    def __post_init__(self):
        if not self.R > 0:
            raise ValueError(f"R must be positive, got {self.R}")


@dataclass(frozen=True)
class PowerLawFit:
    """Result of a log-log least-squares fit: value = amplitude * R^exponent."""

    amplitude: float
    exponent: float
    residual_rms: float


def power_law_fit(points) -> PowerLawFit:
    """Unweighted least-squares line in (log R, log value) space.

    Requires at least 3 points with strictly positive values; a
    non-positive value is rejected with the index of the offending point.
    Quadrature errors on the points are orders of magnitude below the
    values, so weighting would not change the fit.
    """
    points = list(points)
    if len(points) < 3:
        raise ValueError(f"need at least 3 points, got {len(points)}")
    for idx, p in enumerate(points):
        if not p.value > 0:
            raise ValueError(f"non-positive value {p.value} at point index {idx}")
    logr = np.log(np.array([p.R for p in points]))
    logv = np.log(np.array([p.value for p in points]))
    slope, intercept = np.polyfit(logr, logv, 1)
    resid = logv - (slope * logr + intercept)
    return PowerLawFit(
        amplitude=float(np.exp(intercept)),
        exponent=float(slope),
        residual_rms=float(np.sqrt(np.mean(resid * resid))),
    )


def london_c6(p1: qdo.QdoParams, p2: qdo.QdoParams) -> float:
    """London dispersion coefficient (3/2) A0_1 A0_2 w1 w2/(w1 + w2), a.u."""
    a1 = qdo.polarizability(p1)
    a2 = qdo.polarizability(p2)
    return 1.5 * a1 * a2 * p1.freq * p2.freq / (p1.freq + p2.freq)


def _rebuild_at(d: qdo.DimerSystem, omega: float, r: float) -> qdo.DimerSystem:
    """Identical-oscillator dimer at frequency omega and separation r.

    Keeps the source dimer's cutoff ratio kbar_q (the oscillator length
    rescales as 1/omega) and its geometric-mean polarizability, so scans
    over omega probe the cutoff physics at a fixed matter-to-cutoff ratio.
    """
    if not omega > 0:
        raise ValueError(f"omega must be positive, got {omega}")
    b = qdo.kbar_q(d)
    lam = b * units.C_ATOMIC * d.eta / omega
    mass = 1.0 / (2.0 * lam * lam * omega)
    a0 = math.sqrt(qdo.polarizability(d.a) * qdo.polarizability(d.b))
    charge = math.sqrt(a0 * mass) * omega
    p = qdo.QdoParams(mass=mass, freq=omega, charge=charge)
    return qdo.DimerSystem(a=p, b=p, separation_R=r, eta=d.eta)


def crossover_ratio(d: qdo.DimerSystem, omega: float, R: float) -> float:
    """log10 of (leading radiative term)/(London dispersion) at (omega, R).

    The dimer is rebuilt at frequency omega (see _rebuild_at); the
    numerator is delta_v_scale * c1/R, the denominator C6/R^6 from
    london_c6. Strictly increasing in R at fixed omega. A value of -1
    marks the 10% level.
    """
    if not R > 0:
        raise ValueError(f"R must be positive, got {R}")
    dd = _rebuild_at(d, omega, R)
    qdo.coupling_gamma(dd)  # reject cells outside the weak-coupling regime
    co = series.coefficients(dd)
    lead = co.delta_v_scale * co.c1 / R
    c6 = london_c6(dd.a, dd.b)
    return math.log10(lead / (c6 / R**6))


def effective_charge(p: qdo.QdoParams) -> float:
    """Per-oscillator effective charge alpha^(3/2) A0^(1/4) E^(3/4)/sqrt(pi).

    Defined so the leading radiative term reads q_eff,1 * q_eff,2 / R up to
    the cutoff renormalization carried by c1.
    """
    return (
        units.ALPHA_FSC**1.5
        * qdo.polarizability(p) ** 0.25
        * p.freq**0.75
        / math.sqrt(math.pi)
    )


def force_estimate(mu1: float, mu2: float, e1: float, e2: float, r: float) -> float:
    """Radiative force 2 alpha^3 mu1 mu2 E1 E2/(pi R^2), returned in newtons.

    Inputs are atomic units: transition dipoles mu (relate to
    polarizability via A0 = 2 mu^2/E), excitation energies E, separation R.
    """
    for name, v in (("mu1", mu1), ("mu2", mu2), ("e1", e1), ("e2", e2), ("r", r)):
        if not v > 0:
            raise ValueError(f"{name} must be positive, got {v}")
    f_au = 2.0 * units.ALPHA_FSC**3 * mu1 * mu2 * e1 * e2 / (math.pi * r * r)
    return units.force_atomic_to_si(f_au)
