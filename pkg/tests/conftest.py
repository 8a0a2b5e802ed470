"""Collects one pass/fail line per acceptance criterion.

Tests opt in with ``@pytest.mark.criterion(n, "title")``. A criterion passes
only if every test carrying its marker passed.
"""

import pytest

_RESULTS: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when not in ("setup", "call"):
        return
    number, title = marker.args
    entry = _RESULTS.setdefault(number, {"title": title, "passed": True, "tests": 0, "details": []})
    if report.when == "call":
        entry["tests"] += 1
        entry["details"].extend(f"{k}={v}" for k, v in item.user_properties)
    if report.failed:
        entry["passed"] = False


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        entry = _RESULTS[number]
        status = "PASS" if entry["passed"] else "FAIL"
        detail = "; ".join(entry["details"])
        line = f"[{status}] {number}. {entry['title']} ({entry['tests']} tests)"
        terminalreporter.write_line(f"{line}  {detail}" if detail else line)
