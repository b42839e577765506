"""Collects acceptance-summary lines and echoes them after the run."""

from __future__ import annotations

import pytest

_LINES: list[str] = []


@pytest.fixture
def acceptance():
    """Record one pass/fail summary line, then assert on it."""

    def record(number: int, title: str, ok: bool, detail: str) -> None:
        status = "PASS" if ok else "FAIL"
        line = f"criterion {number} [{status}] {title}: {detail}"
        _LINES.append(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES):
            terminalreporter.write_line(line)
