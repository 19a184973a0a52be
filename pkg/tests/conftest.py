"""Per-criterion pass/fail summary for the acceptance suite."""

import pytest

_CRITERIA: dict[int, str] = {}
_NODE_CRITERION: dict[str, int] = {}
_OUTCOMES: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion a test covers")


def pytest_collection_modifyitems(session, config, items):
    for item in items:
        marker = item.get_closest_marker("criterion")
        if marker is None:
            continue
        number, title = marker.args
        _CRITERIA[number] = title
        _NODE_CRITERION[item.nodeid] = number


def pytest_runtest_logreport(report):
    number = _NODE_CRITERION.get(report.nodeid)
    if number is None:
        return
    if report.when == "call" or report.failed:
        _OUTCOMES.setdefault(number, []).append(report.passed and not report.skipped)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        results = _OUTCOMES.get(number)
        if not results:
            status = "NOT RUN"
        else:
            status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {status:7s} {_CRITERIA[number]}")

