import numpy as np
import pytest

from lamhull import tolerance
from lamhull.chart import make_frame
from lamhull.corpus import degenerate_four_well, five_well, four_well

ACCEPTANCE = {}


def record(criterion, passed, detail=""):
    ACCEPTANCE[criterion] = (passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if passed else 'FAIL'}  {detail}")


@pytest.fixture(autouse=True)
def _default_tolerance():
    tolerance.set_tol(tolerance.DEFAULT_TOL)
    yield
    tolerance.set_tol(tolerance.DEFAULT_TOL)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def four():
    w = four_well()
    return w, make_frame(w)


@pytest.fixture
def degenerate():
    w = degenerate_four_well()
    return w, make_frame(w)


@pytest.fixture
def five():
    w = five_well()
    return w, make_frame(w)
