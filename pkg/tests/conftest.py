"""Prints one ACCEPTANCE line per criterion after the run.

Criteria split across several test functions (test_criterion_NNx) are
aggregated with AND, so a red part makes the whole criterion FAIL.
"""

import re

_results = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    match = re.search(r"test_criterion_(\d+)", report.nodeid)
    if match:
        n = int(match.group(1))
        _results[n] = _results.get(n, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.write_line("")
    for n in sorted(_results):
        verdict = "PASS" if _results[n] else "FAIL"
        terminalreporter.write_line(f"ACCEPTANCE {n}: {verdict}")
