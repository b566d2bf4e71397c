import pathlib

import pytest

DATA = pathlib.Path(__file__).parent / "data"

_ACCEPTANCE_RESULTS: dict[int, str] = {}


def record_criterion(num: int, outcome: str) -> None:
    _ACCEPTANCE_RESULTS[num] = outcome


@pytest.fixture
def data_dir() -> pathlib.Path:
    return DATA


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"criterion {num}: {_ACCEPTANCE_RESULTS[num]}")


def pytest_runtest_makereport(item, call):
    """Record pass/fail for the acceptance tests as they run."""
    if call.when != "call":
        return
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    num = marker.args[0]
    record_criterion(num, "FAIL" if call.excinfo is not None else "PASS")


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(n): acceptance criterion number for the summary table"
    )
    config.addinivalue_line("markers", "slow: long-running test")
