"""Shared fixtures, plus a terminal summary listing acceptance criteria.

Acceptance tests register their outcome through the `criterion` fixture; a
pytest_terminal_summary hook then prints one PASS/FAIL line per registered
criterion at the end of the run, so the status of the full acceptance suite
is visible in one block regardless of output capturing.
"""

from __future__ import annotations

import pytest

_CRITERIA = []


@pytest.fixture
def criterion():
    """Record a named acceptance criterion and assert it.

    Usage: criterion("name", ok_bool, "detail string"). The outcome is kept
    for the end-of-run summary; the assert makes the test itself fail too.
    """

    def _record(name: str, ok: bool, detail: str = ""):
        _CRITERIA.append((name, bool(ok), detail))
        assert ok, f"{name}: {detail}" if detail else name

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _CRITERIA:
        status = "PASS" if ok else "FAIL"
        line = f"{status}  {name}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
