import pytest

LINES: list[str] = []


@pytest.fixture
def acceptance():
    """Call with ``(number, ok, text)``; the line is printed in the terminal summary."""

    def record(n, ok, text):
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {text}"
        LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(LINES):
            terminalreporter.write_line(line)
