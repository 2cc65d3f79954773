import pytest

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report_line():
    """Record a one-line PASS/FAIL verdict; the lines are repeated in the terminal summary."""
    def record(number: int, title: str, ok: bool, detail: str = ""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title}" + (f" ({detail})" if detail else "")
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
