"""Shared fixtures: the acceptance-criteria reporter.

``test_acceptance.py`` wraps each criterion in the ``acceptance`` fixture so
the terminal summary ends with one PASS/FAIL line per criterion, whatever
else the suite printed.
"""

from __future__ import annotations

from contextlib import contextmanager
from typing import Iterator

import pytest

ACCEPTANCE_RESULTS: list[tuple[str, bool]] = []


@pytest.fixture
def acceptance():
    """Record a labelled criterion outcome for the terminal summary."""

    @contextmanager
    def run(label: str) -> Iterator[None]:
        try:
            yield
        except BaseException:
            ACCEPTANCE_RESULTS.append((label, False))
            raise
        ACCEPTANCE_RESULTS.append((label, True))

    return run


def pytest_terminal_summary(terminalreporter, exitstatus, config) -> None:
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {label}")
