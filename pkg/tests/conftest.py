import numpy as np
import pytest


def pytest_configure(config):
    config._acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture
def criterion(request):
    """Record one acceptance line, then enforce it.

    The recorded lines are replayed in the terminal summary so a full run
    ends with one PASS/FAIL line per criterion regardless of verbosity.
    """

    def record(num: int, name: str, ok: bool, detail: str) -> None:
        line = f"{'PASS' if ok else 'FAIL'} criterion {num:2d}: {name} ({detail})"
        request.config._acceptance_lines.append(line)
        assert ok, line

    return record


@pytest.fixture
def rng():
    return np.random.default_rng(20240813)
