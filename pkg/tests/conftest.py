import time
from contextlib import contextmanager

import pytest

RESULTS = []


@pytest.fixture
def criterion():
    """Record one acceptance criterion as PASS/FAIL with its wall time."""
    @contextmanager
    def record(label):
        start = time.perf_counter()
        try:
            yield
        except BaseException:
            RESULTS.append(("FAIL", label, time.perf_counter() - start))
            raise
        RESULTS.append(("PASS", label, time.perf_counter() - start))
    return record


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for status, label, elapsed in RESULTS:
        terminalreporter.write_line(f"{status}  {label}  ({elapsed:.2f}s)")
