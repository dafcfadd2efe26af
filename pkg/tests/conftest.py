"""Collects acceptance outcomes and prints one line per criterion."""

import re

_CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")
_results = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2).replace("_", " "))
    if report.when == "call" or report.failed:
        # a failure in any phase sticks
        if _results.get(key) != "FAIL":
            _results[key] = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for (num, label), outcome in sorted(_results.items()):
        terminalreporter.write_line(f"criterion {num} ({label}): {outcome}")
