import sys

import pytest

from wmblowup.mode_stability import mode_stability_report
from wmblowup.spectral_grid import make_grid


@pytest.fixture(scope="session")
def report_32_48():
    return mode_stability_report([32, 48])


@pytest.fixture(scope="session")
def grid32():
    return make_grid(32, 0.0, 1.0)


@pytest.fixture(scope="session")
def grid48():
    return make_grid(48, 0.0, 1.0)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
