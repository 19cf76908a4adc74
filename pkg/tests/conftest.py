import pytest

_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one summary line per acceptance criterion, shown after the run."""

    def record(number: int, passed: bool, text: str):
        _LINES.append(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {text}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES):
            terminalreporter.write_line(line)
