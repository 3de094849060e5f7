import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_results: dict[int, tuple[str, str]] = {}
_notes: dict[int, list[str]] = {}


@pytest.fixture
def note(request):
    """Attach a one-line remark to the criterion summary of the running test."""
    marker = request.node.get_closest_marker("criterion")

    def add(text: str) -> None:
        if marker:
            _notes.setdefault(marker.args[0], []).append(text)

    return add


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = next((m for m in getattr(report, "_criterion", []) if m), None)
    if marker is None:
        return
    n, title = marker
    status = "PASS" if report.passed else "FAIL"
    prev = _results.get(n)
    if prev and prev[0] == "FAIL":
        status = "FAIL"
    _results[n] = (status, title)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    m = item.get_closest_marker("criterion")
    report._criterion = [(m.args[0], m.args[1])] if m else []


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_results):
        status, title = _results[n]
        line = f"criterion {n} [{title}]: {status}"
        for extra in _notes.get(n, []):
            line += f" -- {extra}"
        tr.write_line(line)
