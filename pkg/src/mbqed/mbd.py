"""Normal modes of the dipole-coupled dimer.

The three Cartesian axes decouple exactly, so all six collective modes come
from per-axis 2x2 problems K_i = [[w1^2, g_i w1 w2], [g_i w1 w2, w2^2]]
with g_i the per-axis coupling. Mode frequencies are sqrt of the K_i
eigenvalues; the Bogoliubov blocks relate atomic and collective ladder
operators and yield the correlation weights entering the radiative shift.

Mode ordering everywhere: (x+, x-, y+, y-, z+, z-), '+' being the larger
eigenvalue of each axis block. Atomic coordinate ordering for the 6x6
blocks: (1x, 2x, 1y, 2y, 1z, 2z).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from mbqed import qdo
from mbqed.qdo import InvalidRegimeError


@dataclass(frozen=True)
class NormalModeData:
    """Diagonalization products for one dimer.

    freqs : (6,) mode frequencies, a.u.
    mode_matrix : (3, 2, 2) orthonormal blocks, indexed [axis][atom, mode];
        columns are eigenvectors of the axis block.
    bogo_x, bogo_y : (6, 6) Bogoliubov blocks (mode rows, atom columns).
    m_matrix, s_matrix : (6, 6) X^T -+ Y^T (atom rows, mode columns); the
        entries are sqrt(w_a/wt) N and N sqrt(wt/w_a) respectively.
    corr : (2, 2, 3, 2) correlation tensor C[a, b, axis, branch] built from
        s_matrix products.
    """

    freqs: np.ndarray
    mode_matrix: np.ndarray
    bogo_x: np.ndarray
    bogo_y: np.ndarray
    m_matrix: np.ndarray
    s_matrix: np.ndarray
    corr: np.ndarray


def _axis_eigensystem(w1, w2, g):
    """Eigenvalues and rotation for one 2x2 axis block.

    Returns (kappa_plus, kappa_minus, N) with N columns the eigenvectors of
    [[w1^2, g w1 w2], [g w1 w2, w2^2]]. kappa_minus comes from det/kappa_plus
    to avoid cancellation; any column whose leading entry is negative is
    flipped (tie broken on the second entry), which fixes signs without
    affecting correlation products.
    """
    a = w1 * w1
    d = w2 * w2
    off = g * w1 * w2
    disc = math.hypot(a - d, 2.0 * off)
    kp = 0.5 * (a + d + disc)
    det = a * d * (1.0 - g * g)
    km = det / kp
    if km <= 0.0 or kp <= 0.0:
        raise InvalidRegimeError(f"non-positive mode eigenvalue at coupling {g:.6g}")
    if off == 0.0:
        theta = 0.0 if w1 >= w2 else 0.5 * math.pi
    else:
        theta = 0.5 * math.atan2(2.0 * off, a - d)
    c, s = math.cos(theta), math.sin(theta)
    n = np.array([[c, -s], [s, c]])
    for col in range(2):
        lead, second = n[0, col], n[1, col]
        if lead < 0.0 or (lead == 0.0 and second < 0.0):
            n[:, col] = -n[:, col]
    return kp, km, n


def normal_modes(d: qdo.DimerSystem) -> NormalModeData:
    """Full normal-mode construction for a dimer."""
    w1, w2 = d.a.freq, d.b.freq
    gammas = qdo.coupling_gamma(d)
    watom = np.array([w1, w2])

    freqs = np.empty(6)
    nblocks = np.empty((3, 2, 2))
    for i, g in enumerate(gammas):
        kp, km, n = _axis_eigensystem(w1, w2, g)
        freqs[2 * i] = math.sqrt(kp)
        freqs[2 * i + 1] = math.sqrt(km)
        nblocks[i] = n

    bogo_x = np.zeros((6, 6))
    bogo_y = np.zeros((6, 6))
    for i in range(3):
        for alpha in range(2):
            wt = freqs[2 * i + alpha]
            for a in range(2):
                r = math.sqrt(wt / watom[a])
                coef = nblocks[i, a, alpha]
                bogo_x[2 * i + alpha, 2 * i + a] = 0.5 * coef * (r + 1.0 / r)
                bogo_y[2 * i + alpha, 2 * i + a] = 0.5 * coef * (r - 1.0 / r)

    m_matrix = bogo_x.T - bogo_y.T
    s_matrix = bogo_x.T + bogo_y.T

    corr = np.empty((2, 2, 3, 2))
    for i in range(3):
        for alpha in range(2):
            ratio = freqs[2 * i + alpha] / watom
            svec = nblocks[i, :, alpha] * np.sqrt(ratio)
            corr[:, :, i, alpha] = np.outer(svec, svec)

    return NormalModeData(
        freqs=freqs,
        mode_matrix=nblocks,
        bogo_x=bogo_x,
        bogo_y=bogo_y,
        m_matrix=m_matrix,
        s_matrix=s_matrix,
        corr=corr,
    )


def eigenfrequencies(d: qdo.DimerSystem) -> np.ndarray:
    """Six mode frequencies, ordered (x+, x-, y+, y-, z+, z-)."""
    return normal_modes(d).freqs


def mode_matrix(d: qdo.DimerSystem) -> np.ndarray:
    """Per-axis orthonormal 2x2 blocks, shape (3, 2, 2)."""
    return normal_modes(d).mode_matrix


def bogoliubov(d: qdo.DimerSystem):
    """Bogoliubov blocks (X, Y) plus the derived M = X^T - Y^T, S = X^T + Y^T."""
    nm = normal_modes(d)
    return nm.bogo_x, nm.bogo_y, nm.m_matrix, nm.s_matrix


def correlation_tensor(d: qdo.DimerSystem) -> np.ndarray:
    """Correlation tensor C[a, b, axis, branch], shape (2, 2, 3, 2)."""
    return normal_modes(d).corr
