import re

import pytest

CRITERION = re.compile(r"test_criterion_(\d+)")
# criterion 10 is split over several tests; its bound applies to the total
SHARED_LIMITS = {10: 300.0}


def pytest_collection_modifyitems(items):
    for item in items:
        if CRITERION.search(item.nodeid):
            item.add_marker(pytest.mark.slow)


def pytest_terminal_summary(terminalreporter):
    outcome: dict[int, bool] = {}
    duration: dict[int, float] = {}
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            m = CRITERION.search(getattr(rep, "nodeid", ""))
            if not m:
                continue
            n = int(m.group(1))
            duration[n] = duration.get(n, 0.0) + getattr(rep, "duration", 0.0)
            outcome[n] = outcome.get(n, True) and key == "passed"
    if not outcome:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(outcome):
        ok = outcome[n] and duration[n] <= SHARED_LIMITS.get(n, float("inf"))
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({duration[n]:.2f} s)")
