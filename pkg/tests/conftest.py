import contextlib
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_LINES: list[str] = []


@contextlib.contextmanager
def _criterion(number: int, title: str):
    ok = False
    try:
        yield
        ok = True
    finally:
        line = f"ACCEPTANCE {number:2d} {'PASS' if ok else 'FAIL'}: {title}"
        ACCEPTANCE_LINES.append(line)
        print(line)


@pytest.fixture
def criterion():
    return _criterion


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
