import pytest

ACCEPTANCE = []


@pytest.fixture
def criterion(request):
    """Record a one-line pass/fail entry for the acceptance summary."""

    def log(label, ok, detail=""):
        ACCEPTANCE.append((label, bool(ok), detail))
        return ok

    return log


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {label}{': ' + detail if detail else ''}")
