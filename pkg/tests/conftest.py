import numpy as np
import pytest

EXAMPLE1_Y0 = np.array([
    [1.41, -1.21, 0.49],
    [1.42, 0.72, 1.03],
    [0.67, 1.63, 0.73],
])
EXAMPLE1_XSTAR = np.array([
    [1, 1, -1],
    [1, 1, 1],
    [-1, 1, 1],
])

_ACCEPTANCE_LINES = []


@pytest.fixture
def example1_y0():
    return EXAMPLE1_Y0.copy()


@pytest.fixture
def example1_xstar():
    return EXAMPLE1_XSTAR.copy()


@pytest.fixture
def acceptance_report(request):
    """Call with (label, passed, detail) to add a line to the acceptance summary."""

    def record(label, passed, detail=""):
        line = f"{'PASS' if passed else 'FAIL'}  {label}" + (f"  ({detail})" if detail else "")
        _ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
