import numpy as np
import pytest

from frameuncertainty import dft_pair, identity_system


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def ident3():
    return identity_system(3)


@pytest.fixture(params=[4, 16])
def dftpair(request):
    return dft_pair(request.param)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance") or __import__("sys").modules.get(
        "tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
