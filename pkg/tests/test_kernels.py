"""f-kernels and the batched integrand backends."""

import math
import os

import numpy as np
import pytest

from mbqed import _kernels_py as kpy
from mbqed import kernels


def _fixture(fixtures, name):
    return fixtures[name]["value"]


@pytest.mark.parametrize("x", [1e-4, 2.0])
def test_f_kernels_spot_values(fixtures, x):
    xa = np.array([x])
    assert kernels.f_perp_batch(xa)[0] == pytest.approx(
        _fixture(fixtures, f"f_perp[x={x!r}]"), rel=1e-14
    )
    assert kernels.f_par_batch(xa)[0] == pytest.approx(
        _fixture(fixtures, f"f_par[x={x!r}]"), rel=1e-14
    )


def test_f_kernels_at_zero():
    z = np.array([0.0])
    assert kernels.f_par_batch(z)[0] == pytest.approx(2.0 / 3.0, rel=1e-15)
    assert kernels.f_perp_batch(z)[0] == pytest.approx(2.0 / 3.0, rel=1e-15)
    assert kernels.f_diff_batch(z)[0] == 0.0


def test_f_kernels_at_pi():
    x = np.array([math.pi])
    assert kernels.f_par_batch(x)[0] == pytest.approx(2.0 / math.pi**2, rel=1e-13)
    assert kernels.f_perp_batch(x)[0] == pytest.approx(-1.0 / math.pi**2, rel=1e-13)


def test_trace_identity():
    # (f_par + 2 f_perp)/2 == sin(x)/x
    x = np.linspace(1e-3, 12.0, 997)
    mean = 0.5 * (kernels.f_par_batch(x) + 2.0 * kernels.f_perp_batch(x))
    np.testing.assert_allclose(mean * x, np.sin(x), atol=5e-15)


def test_difference_identity():
    x = np.geomspace(1e-6, 20.0, 501)
    got = kernels.f_diff_batch(x)
    np.testing.assert_allclose(got, kernels.f_perp_batch(x) - kernels.f_par_batch(x), atol=1e-13)


def test_series_trig_switch_is_continuous():
    # the two evaluation branches meet at the switch point; the offset is
    # small enough that the kernel's own slope contributes < 1e-13
    eps = 1e-13
    lo = np.array([0.5 - eps])
    hi = np.array([0.5 + eps])
    for f in (kernels.f_par_batch, kernels.f_perp_batch, kernels.f_diff_batch):
        assert abs(f(hi)[0] - f(lo)[0]) < 1e-12


@pytest.mark.parametrize(
    "gamma,tau,b,kbar",
    [(0.01, 0.1, 0.252, 0.5), (0.01, 3.0, 0.252, 0.5), (1e-6, 0.05, 2.52, 0.5)],
)
def test_integrand_spot_values(fixtures, gamma, tau, b, kbar):
    name = f"integrand[gamma={gamma!r},tau={tau!r},kbar_q={b!r},kbar={kbar!r}]"
    got = kernels.integrand_homo_batch(np.array([kbar]), gamma, tau, b)[0]
    assert got == pytest.approx(_fixture(fixtures, name), rel=1e-12)


def test_integrand_zero_coupling_is_exactly_zero():
    kb = np.linspace(0.0, 1.0, 11)
    assert np.all(kernels.integrand_homo_batch(kb, 0.0, 0.5, 0.252) == 0.0)


def test_integrand_linear_in_small_gamma():
    kb = np.linspace(0.01, 1.0, 50)
    a = kernels.integrand_homo_batch(kb, 1e-6, 0.05, 2.52) / 1e-6
    b = kernels.integrand_homo_batch(kb, 1e-8, 0.05, 2.52) / 1e-8
    np.testing.assert_allclose(a, b, rtol=1e-4)


def test_homo_equals_mode_assembly():
    # the cancellation-safe homo kernel must agree with the generic
    # weighted mode sum built from sqrt(1 +- gamma) frequencies
    g, tau, b = 1e-2, 0.53, 0.252
    kb = np.linspace(1e-6, 1.0, 301)
    s1p, s1m = math.sqrt(1 + g), math.sqrt(1 - g)
    s2p, s2m = math.sqrt(1 + 2 * g), math.sqrt(1 - 2 * g)
    kmode = np.array([b * s1p, b * s1m, b * s1p, b * s1m, b * s2p, b * s2m])
    weight = np.array([0.5 * s1p, -0.5 * s1m, 0.5 * s1p, -0.5 * s1m, -0.5 * s2p, 0.5 * s2m])
    is_par = np.array([0, 0, 0, 0, 1, 1], dtype=np.uint8)
    modes = kernels.integrand_modes_batch(kb, tau, kmode, weight, is_par)
    homo = kernels.integrand_homo_batch(kb, g, tau, b)
    # the generic sum loses ~eps/gamma digits to cancellation, so the
    # comparison checks algebraic equivalence, not ulp-level agreement
    np.testing.assert_allclose(modes, homo, rtol=1e-7, atol=1e-13)


_HAVE_COMPILED = True
try:
    from mbqed import _kernels as kc
except ImportError:
    _HAVE_COMPILED = False


@pytest.mark.skipif(not _HAVE_COMPILED, reason="compiled extension not built")
def test_compiled_backend_matches_pure_python():
    x = np.geomspace(1e-8, 40.0, 2000)
    for name in ("f_par_batch", "f_perp_batch", "f_diff_batch"):
        a = getattr(kc, name)(x)
        b = getattr(kpy, name)(x)
        np.testing.assert_allclose(a, b, rtol=1e-13, atol=1e-16)
    kb = np.linspace(1e-9, 1.0, 1501)
    for g, tau, b in [(1e-2, 0.53, 0.252), (0.3, 2.7, 1.0), (1e-7, 0.01, 25.2)]:
        np.testing.assert_allclose(
            kc.integrand_homo_batch(kb, g, tau, b),
            kpy.integrand_homo_batch(kb, g, tau, b),
            rtol=1e-12,
        )


def test_backend_reports_mode():
    assert kernels.backend() in ("compiled", "python")
    if os.environ.get("MBQED_PURE_PYTHON"):
        assert kernels.backend() == "python"
