import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_CRITERIA: dict[str, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or (report.when != "call" and not report.failed):
        return
    number, title = marker.args
    status = "PASS" if report.passed else "FAIL"
    prev = _CRITERIA.get(item.nodeid)
    if prev is None or status == "FAIL":
        _CRITERIA[item.nodeid] = (f"{number:>2}", f"{status}  {title}")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, line in sorted(_CRITERIA.values(), key=lambda item: int(item[0])):
        terminalreporter.write_line(f"criterion {number}: {line}")
