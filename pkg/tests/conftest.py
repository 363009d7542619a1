import time

import pytest

ACCEPTANCE = []
_START = time.perf_counter()


@pytest.fixture
def accept():
    """Record one pass/fail line per acceptance criterion."""

    def record(name, passed, detail=""):
        ACCEPTANCE.append((name, bool(passed), detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for name, passed, detail in ACCEPTANCE:
        tr.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
    elapsed = time.perf_counter() - _START
    tr.write_line(f"{'PASS' if elapsed < 120 else 'FAIL'}  full suite under 2 minutes  ({elapsed:.1f} s)")
