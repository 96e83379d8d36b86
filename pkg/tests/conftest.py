import random

import pytest
from hypothesis import strategies as st

from weighted_hanoi.model import PAIRS, WeightMatrix

EXAMPLE_ROWS = [[0, 3, 15], [8, 0, 2], [5, 6, 0]]


def matrix_from_offdiag(values):
    rows = [[0] * 3 for _ in range(3)]
    for (i, j), v in zip(PAIRS, values):
        rows[i - 1][j - 1] = v
    return WeightMatrix(rows)


small_weights = st.lists(st.integers(0, 10), min_size=6, max_size=6).map(matrix_from_offdiag)
tiny_weights = st.lists(st.integers(0, 3), min_size=6, max_size=6).map(matrix_from_offdiag)


@pytest.fixture
def example():
    return WeightMatrix(EXAMPLE_ROWS)


@pytest.fixture
def rng():
    return random.Random(12345)


# --- acceptance reporting: one line per criterion in the terminal summary ---

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None or report.when != "call" and report.passed:
        return
    number, title = marker
    previous = _criteria.get(number, (title, "PASS"))
    outcome = "PASS" if report.passed and previous[1] == "PASS" else "FAIL"
    _criteria[number] = (title, outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        report.criterion = tuple(mark.args)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, outcome = _criteria[number]
        terminalreporter.write_line(f"criterion {number:>2}: {outcome}  {title}")
