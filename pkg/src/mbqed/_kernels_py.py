"""Pure-numpy evaluation kernels.

Fallback backend for mbqed.kernels; mirrors the compiled extension's API.
All batch functions take 1-D float64 arrays and return new arrays.
"""

import numpy as np

from mbqed import _fseries

_CPAR = np.array(_fseries.fpar_coefficients())
_CPERP = np.array(_fseries.fperp_coefficients())
_CDIFF = np.array(_fseries.fdiff_coefficients())
_SWITCH = _fseries.SWITCH_X


def _poly_even(coeffs, x):
    # Horner in u = x^2
    u = x * x
    p = np.full_like(u, coeffs[-1])
    for c in coeffs[-2::-1]:
        p = p * u + c
    return p


def _piecewise(x, coeffs, direct):
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)
    small = x < _SWITCH
    out[small] = _poly_even(coeffs, x[small])
    xl = x[~small]
    out[~small] = direct(xl)
    return out


def f_par_batch(x):
    """f_par(x) = 2 (sin x - x cos x)/x^3 for x >= 0."""
    return _piecewise(x, _CPAR, lambda t: 2.0 * (np.sin(t) - t * np.cos(t)) / (t * t * t))


def f_perp_batch(x):
    """f_perp(x) = (x cos x + (x^2 - 1) sin x)/x^3 for x >= 0."""
    return _piecewise(
        x, _CPERP, lambda t: (t * np.cos(t) + (t * t - 1.0) * np.sin(t)) / (t * t * t)
    )


def f_diff_batch(x):
    """f_perp(x) - f_par(x), evaluated without cancellation."""
    return _piecewise(
        x, _CDIFF, lambda t: ((t * t - 3.0) * np.sin(t) + 3.0 * t * np.cos(t)) / (t * t * t)
    )


def integrand_homo_batch(kbar, gamma, tau, kbar_q):
    """Exact radiative integrand for identical oscillators.

    Algebraically identical to the six-mode sum
        kbar * (f_perp [g(s1p) - g(s1m)] - f_par/2 [g(s2p) - g(s2m)]),
    g(s) = s/(kbar + s*kbar_q), s1 = sqrt(1 +- gamma), s2 = sqrt(1 +- 2 gamma),
    but rearranged so every subtraction of near-equal quantities is done in
    closed form. The raw sum loses ~|log10 gamma| digits; this form is
    accurate to machine precision for all valid gamma.
    """
    kb = np.asarray(kbar, dtype=np.float64)
    g = float(gamma)
    if g == 0.0:
        return np.zeros_like(kb)
    b = float(kbar_q)

    s1p = np.sqrt(1.0 + g)
    s1m = np.sqrt(1.0 - g)
    s2p = np.sqrt(1.0 + 2.0 * g)
    s2m = np.sqrt(1.0 - 2.0 * g)
    big_s1 = s1p + s1m
    big_s2 = s2p + s2m
    p1 = s1p * s1m
    p2 = s2p * s2m

    x = tau * kb
    fpar = f_par_batch(x)
    fdiff = f_diff_batch(x)

    pi1 = (kb + s1p * b) * (kb + s1m * b)
    pi2 = (kb + s2p * b) * (kb + s2m * b)
    d1 = 2.0 * g * kb / (big_s1 * pi1)

    # S2 - S1, P2 - P1 and S2*P2 - S1*P1 are O(gamma^2); each is evaluated
    # from single-sign products so no difference of near-equal terms occurs.
    ds = -g * g * (4.0 / big_s2 + 2.0 / big_s1) / ((s2p + s1p) * (s2m + s1m))
    dp = -3.0 * g * g / (p2 + p1)
    dsp = big_s2 * dp + p1 * ds
    num = kb * kb * ds + kb * b * ds * (big_s1 + big_s2) + b * b * dsp
    two_d1_minus_d2 = 4.0 * g * kb * num / (big_s1 * pi1 * big_s2 * pi2)

    return kb * (fdiff * d1 + 0.5 * fpar * two_d1_minus_d2)


def integrand_modes_batch(kbar, tau, kmode, weight, is_par):
    """Radiative integrand assembled from explicit mode data.

    kbar * sum_j weight[j] * f_j(tau*kbar) / (kbar + kmode[j]) with f_j
    chosen by is_par[j] (longitudinal modes use f_par, transverse f_perp).
    This is the general heteroatomic path.
    """
    kb = np.asarray(kbar, dtype=np.float64)
    x = tau * kb
    fperp = f_perp_batch(x)
    fpar = f_par_batch(x)
    acc = np.zeros_like(kb)
    for j in range(len(kmode)):
        f = fpar if is_par[j] else fperp
        acc = acc + weight[j] * f / (kb + kmode[j])
    return kb * acc
