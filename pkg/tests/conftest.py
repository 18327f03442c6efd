import math

import pytest

from thzirs.geometry import SPEED_OF_LIGHT, IrsGrid, Placement
from thzirs.scattering import RfParams

LAM = SPEED_OF_LIGHT / 300e9


@pytest.fixture
def lam():
    return LAM


@pytest.fixture
def rf():
    """300 GHz reference link: 20 dBi, 10 dBm, -174 dBm/Hz, 10 GHz, kappa 0.0033 /m."""
    return RfParams.from_db()


@pytest.fixture
def grid100(lam):
    return IrsGrid.half_wavelength(100, 100, lam)


@pytest.fixture
def ref_tx():
    return Placement.from_cartesian((0, -0.3, 0.6))


@pytest.fixture
def ref_rx():
    return Placement.from_cartesian((0, 1, 1))


def rel(a, b):
    return abs(a - b) / abs(b)


def deg(x):
    return math.radians(x)


ACCEPTANCE_LINES = []


def record_acceptance(number, title, passed, detail):
    line = f"criterion {number:>2} {'PASS' if passed else 'FAIL'}  {title}: {detail}"
    ACCEPTANCE_LINES.append((number, line))
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
