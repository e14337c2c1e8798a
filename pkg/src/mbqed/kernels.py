"""Kernel backend selection.

Prefers the compiled extension (mbqed._kernels, built from Cython) and
falls back to the pure-numpy implementation when the extension is missing.
Set MBQED_PURE_PYTHON=1 to force the fallback, e.g. for benchmarking.
"""

import os

if os.environ.get("MBQED_PURE_PYTHON"):
    from mbqed import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from mbqed import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from mbqed import _kernels_py as _impl

        BACKEND = "python"

f_par_batch = _impl.f_par_batch
f_perp_batch = _impl.f_perp_batch
f_diff_batch = _impl.f_diff_batch
integrand_homo_batch = _impl.integrand_homo_batch
integrand_modes_batch = _impl.integrand_modes_batch


def backend() -> str:
    """Name of the active backend: 'compiled' or 'python'."""
    return BACKEND
