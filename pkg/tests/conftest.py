from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from debtboard.fixtures import sales_registry  # noqa: E402


@pytest.fixture
def sales():
    return sales_registry()


ACCEPTANCE_FILE = "test_acceptance.py"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    outcomes: dict[str, str] = {}
    for status in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(status, []):
            nodeid = getattr(report, "nodeid", "")
            if ACCEPTANCE_FILE not in nodeid:
                continue
            if getattr(report, "when", "call") not in ("call", "collect"):
                if status != "error":
                    continue
            name = nodeid.split("::")[-1]
            # A failure in any phase trumps an earlier pass.
            if outcomes.get(name) != "failed":
                outcomes[name] = "passed" if status == "passed" else "failed"
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(outcomes):
        verdict = "PASS" if outcomes[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}")
