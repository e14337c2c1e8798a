"""Analytic long-range expansion of the radiative interaction.

Double Taylor expansion of the exact integrand in the coupling gamma and
the retardation parameter tau. Integrating the truncated series over kbar
gives closed-form coefficients c1, c7, c9 such that

    delta_v_approx = delta_v_scale * (c1/R + c7/R^7 + c9/R^9)

with delta_v_scale the radiative energy prefactor. The default truncation
orders (m_gamma = 3, m_tau = 3) keep exactly these three terms. The
expansion is derived for identical oscillators only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from mbqed import kernels, qdo, radiative
from mbqed.units import UnitSystem


class UnsupportedDimerError(ValueError):
    """The series expansion requires two identical oscillators."""


@dataclass(frozen=True)
class SeriesCoefficients:
    """Closed-form expansion coefficients (a.u. lengths to matching powers).

    c1 > 0 for every kbar_q > 0 (the 1/R term is repulsive); c7 < 0 and
    c9 > 0 follow from the general forms.
    """

    c1: float
    c7: float
    c9: float
    delta_v_scale: float
    kbar_q: float
    unit: UnitSystem


def _bracket_i1(b: float) -> float:
    """I1(b) = integral over kbar in [0,1] of kbar^4/(kbar + b)^2.

    c1 = A0 * k_M^2 * I1/15. The closed form

        1/3 - b + 3 b^2 + b^3/(1 + b) - 4 b^3 log(1 + 1/b)

    cancels catastrophically for large b (I1 ~ 1/(5 b^2) while individual
    terms grow as b^3), so above b = 2 an alternating series in 1/b is
    used instead; both paths carry full double precision at the switch.
    """
    if b <= 2.0:
        return 1.0 / 3.0 - b + 3.0 * b * b + b**3 / (1.0 + b) - 4.0 * b**3 * math.log1p(1.0 / b)
    inv = 1.0 / b
    total = 0.0
    sign = 1.0
    power = 1.0  # (1/b)^n
    for n in range(200):
        term = sign * (n + 1) / (n + 5) * power
        total += term
        if abs(term) < 1e-17 * abs(total):
            break
        sign = -sign
        power *= inv
    return total / (b * b)


def coefficients(d: qdo.DimerSystem) -> SeriesCoefficients:
    """Closed-form c1, c7, c9 for an identical-oscillator dimer.

    Raises UnsupportedDimerError for mixed dimers.
    """
    if not qdo.is_homoatomic(d):
        raise UnsupportedDimerError("series coefficients require identical oscillators")
    a0 = qdo.polarizability(d.a)
    k_m = qdo.cutoff_wavenumber(d)
    b = qdo.kbar_q(d)
    onepb3 = (1.0 + b) ** 3
    c1 = a0 * k_m * k_m * _bracket_i1(b) / 15.0
    c7 = -(a0**3) * k_m * k_m * (3.0 * b + 1.0) / (180.0 * onepb3)
    c9 = a0**3 * (3.0 + 5.0 * b) / (12.0 * onepb3)
    return SeriesCoefficients(
        c1=c1,
        c7=c7,
        c9=c9,
        delta_v_scale=radiative.energy_scale(d),
        kbar_q=b,
        unit=UnitSystem.ATOMIC,
    )


def delta_v_approx(d: qdo.DimerSystem) -> float:
    """Three-term approximation delta_v_scale*(c1/R + c7/R^7 + c9/R^9), a.u."""
    co = coefficients(d)
    # powers of 1/R underflow gracefully where R**9 would overflow
    inv = 1.0 / d.separation_R
    return co.delta_v_scale * (co.c1 * inv + co.c7 * inv**7 + co.c9 * inv**9)


# kbar-dependent prefactors of the gamma^n blocks, n = 1, 3, 5.
def _block_prefactor(n, kb, b):
    d = kb + b
    if n == 1:
        return kb / (d * d)
    if n == 3:
        return kb * (kb * kb + 4.0 * kb * b + 5.0 * b * b) / (8.0 * d**4)
    if n == 5:
        return (
            kb
            * (
                7.0 * kb**4
                + 42.0 * b * kb**3
                + 102.0 * b * b * kb * kb
                + 122.0 * kb * b**3
                + 63.0 * b**4
            )
            / (128.0 * d**6)
        )
    raise ValueError(f"no gamma^{n} block")


def _t_series(n, x, m_tau):
    """Truncated Taylor series of f_perp - 2^(n-1) f_par.

    Keeps powers x^(2j) with 2j <= m_tau. Coefficients are
    (-1)^j [1/(2j+1)! - (1 + 2^n)(2j+2)/(2j+3)!]; the j = 0 term vanishes
    identically for n = 1.
    """
    total = np.zeros_like(x)
    u = x * x
    upow = np.ones_like(x)
    for j in range(m_tau // 2 + 1):
        c = (-1.0) ** j * (
            1.0 / math.factorial(2 * j + 1)
            - (1.0 + 2.0**n) * (2 * j + 2) / math.factorial(2 * j + 3)
        )
        total = total + c * upow
        upow = upow * u
    return total


def expanded_integrand(kbar, gamma, tau, kbar_q, m_gamma=3, m_tau=3):
    """Truncated double series of the exact integrand.

    Odd gamma powers only; the gamma^5 block enters when m_gamma >= 5.
    Leading behaviour: gamma * (-kbar^4 tau^2 / 15) / (kbar + kbar_q)^2.
    Accepts a float or 1-D array for kbar.
    """
    if m_gamma < 1 or m_tau < 1:
        raise ValueError("expansion orders must be >= 1")
    if m_gamma > 5:
        raise ValueError(f"coupling orders above 5 are not implemented, got {m_gamma}")
    if abs(2.0 * gamma) >= 1.0:
        raise qdo.InvalidRegimeError(f"|2*gamma| = {abs(2.0 * gamma):.6g} >= 1")
    if not tau > 0:
        raise ValueError(f"tau must be positive, got {tau}")
    if not kbar_q > 0:
        raise ValueError(f"kbar_q must be positive, got {kbar_q}")
    kb = np.atleast_1d(np.asarray(kbar, dtype=np.float64))
    x = tau * kb
    out = np.zeros_like(kb)
    for n in (1, 3, 5):
        if n > m_gamma:
            break
        out = out + gamma**n * _block_prefactor(n, kb, kbar_q) * _t_series(n, x, m_tau)
    out = kb * out
    if np.isscalar(kbar) or np.ndim(kbar) == 0:
        return float(out[0])
    return out


def truncation_error(d: qdo.DimerSystem, m_gamma=3, m_tau=3, kbar_grid=256) -> float:
    """Relative truncation-error bound of the expansion.

    max over a uniform kbar grid of |exact - expanded| divided by
    |integral of the exact integrand| (computed by the adaptive quadrature
    at its default 1e-9 relative tolerance). By the mean-value argument
    this bounds the relative error of the integrated approximation.
    Returns 0 for an uncoupled dimer, where both numerator and denominator
    vanish.
    """
    if kbar_grid < 64:
        raise ValueError(f"kbar_grid must be >= 64, got {kbar_grid}")
    if not qdo.is_homoatomic(d):
        raise UnsupportedDimerError("truncation metric requires identical oscillators")
    gam = qdo.coupling_gamma(d)[0]
    if gam == 0.0:
        return 0.0
    k_m = qdo.cutoff_wavenumber(d)
    t = k_m * d.separation_R
    b = qdo.kbar_q(d)
    kb = np.linspace(0.0, 1.0, kbar_grid)
    exact = kernels.integrand_homo_batch(kb, gam, t, b)
    approx = expanded_integrand(kb, gam, t, b, m_gamma, m_tau)
    res = radiative.delta_v_int(d)
    denom = abs(res.value / radiative.energy_scale(d))
    return float(np.max(np.abs(exact - approx)) / denom)
