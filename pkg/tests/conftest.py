from __future__ import annotations

import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance():
    """record(tag, ok, detail) appends one summary line and returns ok."""

    def record(tag: str, ok: bool, detail: str) -> bool:
        ACCEPTANCE_LINES.append(f"criterion {tag}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok

    return record
