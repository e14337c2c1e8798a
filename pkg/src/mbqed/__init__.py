"""Repulsive radiative interaction between pairs of quantum Drude oscillators.

The package computes the inverse-distance interaction produced by coupling
the two-oscillator normal modes to the radiation field up to a cutoff
wavenumber, alongside its closed-form small-coupling approximation,
per-oscillator self-energies, the two-photon diamagnetic shift, and a few
analysis helpers (power-law fits, dispersion crossover, force estimates).
All internal arithmetic is in Hartree atomic units.
"""

from mbqed.analysis import (
    PowerLawFit,
    SweepPoint,
    crossover_ratio,
    effective_charge,
    force_estimate,
    london_c6,
    power_law_fit,
)
from mbqed.kernels import backend
from mbqed.mbd import NormalModeData, correlation_tensor, eigenfrequencies, normal_modes
from mbqed.qdo import (
    ARGON_FREQ,
    ARGON_POLARIZABILITY,
    DimerSystem,
    InvalidRegimeError,
    QdoParams,
    argon,
    argon_dimer,
    coupling_gamma,
    cutoff_wavenumber,
    kbar_q,
    tau,
)
from mbqed.radiative import (
    QuadratureSpec,
    RadiativeResult,
    delta_e_a2,
    delta_u_self,
    delta_v_int,
    energy_scale,
    f_par,
    f_perp,
    integrand,
)
from mbqed.series import (
    SeriesCoefficients,
    UnsupportedDimerError,
    coefficients,
    delta_v_approx,
    expanded_integrand,
    truncation_error,
)
from mbqed.units import UnitSystem, convert_energy, convert_length

__version__ = "0.1.0"

__all__ = [
    "ARGON_FREQ",
    "ARGON_POLARIZABILITY",
    "DimerSystem",
    "InvalidRegimeError",
    "NormalModeData",
    "PowerLawFit",
    "QdoParams",
    "QuadratureSpec",
    "RadiativeResult",
    "SeriesCoefficients",
    "SweepPoint",
    "UnitSystem",
    "UnsupportedDimerError",
    "argon",
    "argon_dimer",
    "backend",
    "coefficients",
    "convert_energy",
    "convert_length",
    "correlation_tensor",
    "coupling_gamma",
    "crossover_ratio",
    "cutoff_wavenumber",
    "delta_e_a2",
    "delta_u_self",
    "delta_v_approx",
    "delta_v_int",
    "effective_charge",
    "eigenfrequencies",
    "energy_scale",
    "expanded_integrand",
    "f_par",
    "f_perp",
    "force_estimate",
    "integrand",
    "kbar_q",
    "london_c6",
    "normal_modes",
    "power_law_fit",
    "truncation_error",
    "__version__",
]
