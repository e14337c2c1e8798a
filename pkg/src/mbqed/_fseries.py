"""Taylor coefficients shared by the pure and compiled kernel backends.

The angular kernels are

    f_par(x)  = 2 (sin x - x cos x) / x^3
    f_perp(x) = (x cos x + (x^2 - 1) sin x) / x^3
    f_diff(x) = f_perp(x) - f_par(x)

whose closed forms lose roughly 3*|log10 x| digits to cancellation as
x -> 0. Below SWITCH_X they are evaluated from these even Taylor series
instead; with 12 terms both paths agree to ~4e-15 at the switch.
"""

import math

N_TERMS = 12
SWITCH_X = 0.5


def fpar_coefficients(n=N_TERMS):
    """Coefficients of x^(2j) in f_par, j = 0..n-1."""
    return [(-1.0) ** j * 2.0 * (2 * j + 2) / math.factorial(2 * j + 3) for j in range(n)]


def fperp_coefficients(n=N_TERMS):
    """Coefficients of x^(2j) in f_perp."""
    return [
        (-1.0) ** j * (1.0 / math.factorial(2 * j + 1) - (2 * j + 2) / math.factorial(2 * j + 3))
        for j in range(n)
    ]


def fdiff_coefficients(n=N_TERMS):
    """Coefficients of x^(2j) in f_perp - f_par; the j = 0 term is exactly 0."""
    return [
        (-1.0) ** j
        * (1.0 / math.factorial(2 * j + 1) - 3.0 * (2 * j + 2) / math.factorial(2 * j + 3))
        for j in range(n)
    ]
