import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

# criterion number -> list of (part, passed, detail)
CRITERIA: dict[int, list] = {}


@pytest.fixture
def record():
    def _record(number, part, passed, detail=""):
        CRITERIA.setdefault(number, []).append((part, bool(passed), detail))
        return passed
    return _record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        parts = CRITERIA[number]
        ok = all(p for _, p, _ in parts)
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number}")
        for part, passed, detail in parts:
            line = f"    {'pass' if passed else 'FAIL'}  {part}"
            terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
