"""Compare the compiled kernel extension against the pure-Python fallback.

Times the vectorized retardation kernels and the radiative integrand on a
dense argument grid. Run from the repository root after an editable install:

    python3 benchmarks/bench_kernels.py --n 200000 --reps 5
"""

import argparse
import time

import numpy as np

from mbqed import _kernels_py

try:
    from mbqed import _kernels
except ImportError:
    _kernels = None


FUNCS = ["f_par_batch", "f_perp_batch", "f_diff_batch", "integrand_homo_batch"]


def run_one(mod, name, args, reps):
    fn = getattr(mod, name)
    best = np.inf
    out = None
    for _ in range(reps):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=200_000, help="grid size")
    p.add_argument("--reps", type=int, default=5, help="repetitions, best time wins")
    a = p.parse_args(argv)

    x = np.linspace(1e-6, 12.0, a.n)
    kbar = np.linspace(1e-6, 1.0, a.n)
    argsets = {
        "f_par_batch": (x,),
        "f_perp_batch": (x,),
        "f_diff_batch": (x,),
        "integrand_homo_batch": (kbar, 1e-2, 0.25, 0.252),
    }

    if _kernels is None:
        print("compiled extension not available, timing the python backend only")

    print(f"{'function':<24}{'python [ms]':>14}{'compiled [ms]':>16}{'speedup':>10}")
    for name in FUNCS:
        t_py, ref = run_one(_kernels_py, name, argsets[name], a.reps)
        if _kernels is None:
            print(f"{name:<24}{t_py * 1e3:>14.3f}{'-':>16}{'-':>10}")
            continue
        t_c, got = run_one(_kernels, name, argsets[name], a.reps)
        worst = float(np.max(np.abs(got - ref)))
        print(
            f"{name:<24}{t_py * 1e3:>14.3f}{t_c * 1e3:>16.3f}"
            f"{t_py / t_c:>10.2f}  (max abs dev {worst:.1e})"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
