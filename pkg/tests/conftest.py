from fractions import Fraction as F

import pytest

from spectral_workbench.core import IntervalUnion, PeriodicSet

_RESULTS: dict[str, bool] = {}


def _unit():
    return IntervalUnion.from_pairs([(0, 1)])


def _two():
    return IntervalUnion.from_pairs([(0, F(1, 2)), (1, F(3, 2))])


def _three():
    return IntervalUnion.from_pairs([(0, F(1, 3)), (1, F(4, 3)), (2, F(7, 3))])


def _split():
    return IntervalUnion.from_pairs([(0, F(1, 2)), (F(5, 4), F(7, 4))])


@pytest.fixture
def omega_a():
    return _unit()


@pytest.fixture
def omega_b():
    return _two()


@pytest.fixture
def omega_c():
    return _three()


@pytest.fixture
def omega_e():
    return _split()


@pytest.fixture
def lam_b():
    return PeriodicSet(2, (0, F(1, 2)))


@pytest.fixture
def lam_c():
    return PeriodicSet(3, (0, F(1, 3), F(2, 3)))


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        _RESULTS[report.nodeid.split("::")[-1]] = report.passed


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_RESULTS):
        terminalreporter.write_line(f"{'PASS' if _RESULTS[name] else 'FAIL'}  {name}")
