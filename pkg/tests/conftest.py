import os
import time
from pathlib import Path

import numpy as np
import pytest

from mbqed import analysis, oracle, qdo, radiative

_acceptance_lines = []


def fixtures_dir():
    env = os.environ.get("MBQED_FIXTURES")
    if env:
        return Path(env)
    return Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures():
    return oracle.load_fixtures(fixtures_dir() / "derived_values.json")


@pytest.fixture
def acceptance():
    """Record one acceptance-criterion outcome, then assert it."""

    def record(name, passed, detail):
        _acceptance_lines.append((name, bool(passed), detail))
        assert passed, f"{name}: {detail}"

    return record


@pytest.fixture(scope="session")
def argon_sweep():
    """Single-threaded argon (eta, R) sweep shared across acceptance tests.

    Returns ({eta: [SweepPoint, ...]}, elapsed_seconds); 30 log-spaced
    separations from 5 to 100 Angstrom for each of the five cutoffs.
    """
    etas = [1e-3, 2e-3, 5e-3, 1e-2, 2e-2]
    rgrid = np.geomspace(5.0, 100.0, 30)
    t0 = time.monotonic()
    out = {}
    for eta in etas:
        pts = []
        for r in rgrid:
            d = qdo.argon_dimer(float(r), eta)
            res = radiative.delta_v_int(d)
            pts.append(
                analysis.SweepPoint(R=d.separation_R, value=res.value, error=res.abs_error_estimate)
            )
        out[eta] = pts
    return out, time.monotonic() - t0


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_lines:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name, passed, detail in _acceptance_lines:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{status}  {name}: {detail}")
