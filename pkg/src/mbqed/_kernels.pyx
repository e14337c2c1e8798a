# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled evaluation kernels; mirrors mbqed._kernels_py exactly.

Scalar math in C for the hot quadrature loops. The Taylor coefficients are
imported from mbqed._fseries so both backends share one definition.
"""

import numpy as np

from libc.math cimport cos, sin, sqrt

from mbqed import _fseries

cdef int _NT = _fseries.N_TERMS
cdef double _SWITCH = _fseries.SWITCH_X
cdef double _CPAR[12]
cdef double _CPERP[12]
cdef double _CDIFF[12]

_tmp = _fseries.fpar_coefficients()
for _j in range(12):
    _CPAR[_j] = _tmp[_j]
_tmp = _fseries.fperp_coefficients()
for _j in range(12):
    _CPERP[_j] = _tmp[_j]
_tmp = _fseries.fdiff_coefficients()
for _j in range(12):
    _CDIFF[_j] = _tmp[_j]
del _tmp, _j


cdef inline double _poly_even(const double* c, double x) nogil:
    cdef double u = x * x
    cdef double p = c[11]
    cdef int j
    for j in range(10, -1, -1):
        p = p * u + c[j]
    return p


cdef inline double _f_par(double x) nogil:
    if x < _SWITCH:
        return _poly_even(&_CPAR[0], x)
    return 2.0 * (sin(x) - x * cos(x)) / (x * x * x)


cdef inline double _f_perp(double x) nogil:
    if x < _SWITCH:
        return _poly_even(&_CPERP[0], x)
    return (x * cos(x) + (x * x - 1.0) * sin(x)) / (x * x * x)


cdef inline double _f_diff(double x) nogil:
    if x < _SWITCH:
        return _poly_even(&_CDIFF[0], x)
    return ((x * x - 3.0) * sin(x) + 3.0 * x * cos(x)) / (x * x * x)


def f_par_batch(x_in):
    """f_par on a 1-D array; see the pure backend for the definition."""
    x = np.ascontiguousarray(x_in, dtype=np.float64)
    out = np.empty_like(x)
    cdef double[::1] xv = x
    cdef double[::1] ov = out
    cdef Py_ssize_t i, n = xv.shape[0]
    for i in range(n):
        ov[i] = _f_par(xv[i])
    return out


def f_perp_batch(x_in):
    """f_perp on a 1-D array."""
    x = np.ascontiguousarray(x_in, dtype=np.float64)
    out = np.empty_like(x)
    cdef double[::1] xv = x
    cdef double[::1] ov = out
    cdef Py_ssize_t i, n = xv.shape[0]
    for i in range(n):
        ov[i] = _f_perp(xv[i])
    return out


def f_diff_batch(x_in):
    """f_perp - f_par on a 1-D array, cancellation-free."""
    x = np.ascontiguousarray(x_in, dtype=np.float64)
    out = np.empty_like(x)
    cdef double[::1] xv = x
    cdef double[::1] ov = out
    cdef Py_ssize_t i, n = xv.shape[0]
    for i in range(n):
        ov[i] = _f_diff(xv[i])
    return out


def integrand_homo_batch(kbar, double gamma, double tau, double kbar_q):
    """Exact homoatomic radiative integrand; same algebra as the pure backend."""
    kb = np.ascontiguousarray(kbar, dtype=np.float64)
    out = np.empty_like(kb)
    cdef double[::1] kv = kb
    cdef double[::1] ov = out
    cdef Py_ssize_t i, n = kv.shape[0]

    if gamma == 0.0:
        for i in range(n):
            ov[i] = 0.0
        return out

    cdef double g = gamma
    cdef double b = kbar_q
    cdef double s1p = sqrt(1.0 + g)
    cdef double s1m = sqrt(1.0 - g)
    cdef double s2p = sqrt(1.0 + 2.0 * g)
    cdef double s2m = sqrt(1.0 - 2.0 * g)
    cdef double big_s1 = s1p + s1m
    cdef double big_s2 = s2p + s2m
    cdef double p1 = s1p * s1m
    cdef double p2 = s2p * s2m
    cdef double ds = -g * g * (4.0 / big_s2 + 2.0 / big_s1) / ((s2p + s1p) * (s2m + s1m))
    cdef double dp = -3.0 * g * g / (p2 + p1)
    cdef double dsp = big_s2 * dp + p1 * ds
    cdef double k, x, pi1, pi2, d1, num, t2

    for i in range(n):
        k = kv[i]
        x = tau * k
        pi1 = (k + s1p * b) * (k + s1m * b)
        pi2 = (k + s2p * b) * (k + s2m * b)
        d1 = 2.0 * g * k / (big_s1 * pi1)
        num = k * k * ds + k * b * ds * (big_s1 + big_s2) + b * b * dsp
        t2 = 4.0 * g * k * num / (big_s1 * pi1 * big_s2 * pi2)
        ov[i] = k * (_f_diff(x) * d1 + 0.5 * _f_par(x) * t2)
    return out


def integrand_modes_batch(kbar, double tau, kmode, weight, is_par):
    """Mode-assembled radiative integrand; same contract as the pure backend."""
    kb = np.ascontiguousarray(kbar, dtype=np.float64)
    km = np.ascontiguousarray(kmode, dtype=np.float64)
    wt = np.ascontiguousarray(weight, dtype=np.float64)
    ip = np.ascontiguousarray(is_par, dtype=np.uint8)
    out = np.empty_like(kb)
    cdef double[::1] kv = kb
    cdef double[::1] kmv = km
    cdef double[::1] wv = wt
    cdef unsigned char[::1] pv = ip
    cdef double[::1] ov = out
    cdef Py_ssize_t i, j, n = kv.shape[0], m = kmv.shape[0]
    cdef double k, x, fpe, fpa, acc

    for i in range(n):
        k = kv[i]
        x = tau * k
        fpe = _f_perp(x)
        fpa = _f_par(x)
        acc = 0.0
        for j in range(m):
            acc += wv[j] * (fpa if pv[j] else fpe) / (k + kmv[j])
        ov[i] = k * acc
    return out
