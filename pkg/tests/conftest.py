import sys

import pytest

from affpieces import build_affine_cartan


@pytest.fixture(scope="session")
def A1():
    return build_affine_cartan("A", 1)


@pytest.fixture(scope="session")
def A2():
    return build_affine_cartan("A", 2)


@pytest.fixture(scope="session")
def C2():
    return build_affine_cartan("C", 2)


@pytest.fixture(scope="session")
def G2():
    return build_affine_cartan("G", 2)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.format_line(n))
