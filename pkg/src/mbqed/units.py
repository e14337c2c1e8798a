"""Physical constants and unit conversions.

All numerical work in this package happens in Hartree atomic units
(hbar = e = m_e = 1, c = 1/alpha). SI and natural units (hbar = c = 1,
energies in eV) exist only at input/output boundaries.

Constants are CODATA-2018 values stored to full published precision; the
acceptance tolerances of the package are orders of magnitude looser than
the constants' uncertainty.
"""

from __future__ import annotations

import enum

# CODATA 2018, SI.
C_SI = 299792458.0                  # speed of light, m/s (exact)
HBAR_SI = 1.054571817e-34           # reduced Planck constant, J s
EPS0_SI = 8.8541878128e-12          # vacuum permittivity, F/m
E_CHARGE_SI = 1.602176634e-19       # elementary charge, C (exact)
M_ELECTRON_SI = 9.1093837015e-31    # electron mass, kg
BOHR_SI = 5.29177210903e-11         # Bohr radius, m
HARTREE_SI = 4.3597447222071e-18    # Hartree energy, J
ALPHA_FSC = 7.2973525693e-3         # fine-structure constant

# Derived anchors.
C_ATOMIC = 1.0 / ALPHA_FSC          # speed of light in atomic units, by definition
EV_SI = E_CHARGE_SI                 # 1 eV in J (exact)
ANGSTROM_TO_BOHR = 1e-10 / BOHR_SI  # 1 Angstrom in bohr
DEBYE_TO_AU = 0.3934303             # 1 debye in atomic units of dipole moment
FORCE_AU_SI = HARTREE_SI / BOHR_SI  # 1 atomic unit of force, in N
NATURAL_LENGTH_SI = HBAR_SI * C_SI / EV_SI  # hbar*c / (1 eV), in m


class UnitSystem(enum.Enum):
    """Unit systems handled at I/O boundaries.

    SI uses joules and meters, NATURAL uses hbar = c = 1 with energies in
    eV (lengths in hbar*c/eV), ATOMIC uses hartrees and bohr.
    """

    SI = "si"
    NATURAL = "natural"
    ATOMIC = "atomic"


# One unit of each quantity kind, expressed in SI.
_ENERGY_IN_J = {
    UnitSystem.SI: 1.0,
    UnitSystem.NATURAL: EV_SI,
    UnitSystem.ATOMIC: HARTREE_SI,
}
_LENGTH_IN_M = {
    UnitSystem.SI: 1.0,
    UnitSystem.NATURAL: NATURAL_LENGTH_SI,
    UnitSystem.ATOMIC: BOHR_SI,
}


def _convert(value, from_system, to_system, table):
    if from_system is to_system:
        return value
    return value * (table[from_system] / table[to_system])


def convert_energy(value, from_system, to_system):
    """Convert an energy between unit systems.

    Parameters
    ----------
    value : float
        Energy in units of ``from_system``.
    from_system, to_system : UnitSystem
        Source and target systems.

    Returns
    -------
    float
        Energy in units of ``to_system``. Identity conversions return the
        input unchanged; round trips are exact to better than 1e-12
        relative.
    """
    return _convert(value, from_system, to_system, _ENERGY_IN_J)


def convert_length(value, from_system, to_system):
    """Convert a length between unit systems; see :func:`convert_energy`."""
    return _convert(value, from_system, to_system, _LENGTH_IN_M)


def energy_factor(from_system, to_system):
    """Multiplicative factor converting energies from one system to another."""
    return _ENERGY_IN_J[from_system] / _ENERGY_IN_J[to_system]


def length_factor(from_system, to_system):
    """Multiplicative factor converting lengths from one system to another."""
    return _LENGTH_IN_M[from_system] / _LENGTH_IN_M[to_system]


def angstrom_to_bohr(value):
    """Length in Angstrom to atomic units."""
    return value * ANGSTROM_TO_BOHR


def bohr_to_angstrom(value):
    """Length in atomic units to Angstrom."""
    return value / ANGSTROM_TO_BOHR


def force_atomic_to_si(value):
    """Force in atomic units to newtons."""
    return value * FORCE_AU_SI
