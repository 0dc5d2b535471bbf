from __future__ import annotations

import pytest

from trivalent import pipeline


@pytest.fixture(autouse=True, scope="session")
def _fresh_pipeline():
    pipeline.configure(cache=None)
    yield


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import acceptance_lines
    except ImportError:
        return
    lines = acceptance_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
