import numpy as np
import pytest

from batchlp import StandardLp


def lp(c, A, b):
    return StandardLp(np.array(c, float), np.array(A, float), np.array(b, float))


@pytest.fixture
def unit_box_lp():
    return lp([1, 1], [[1, 0], [0, 1]], [1, 1])


@pytest.fixture
def textbook_lp():
    # max 3x1 + 2x2, x1 + x2 <= 4, x1 + 3x2 <= 6: optimum 12 at (4, 0)
    return lp([3, 2], [[1, 1], [1, 3]], [4, 6])


def rel_close(a, b, tol=1e-6):
    return abs(a - b) <= tol * (1.0 + max(abs(a), abs(b)))


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "REPORT", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
