import pytest

_LINES = []


@pytest.fixture
def acceptance():
    """Collects one PASS/FAIL line per acceptance criterion."""
    return _LINES


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance")
        for line in sorted(_LINES):
            terminalreporter.write_line(line)
