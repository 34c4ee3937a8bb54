import pytest

_CRITERIA = []


@pytest.fixture
def criterion():
    """Record one pass/fail line for an acceptance criterion and assert it."""
    def record(number, title, error, tol):
        ok = bool(error <= tol)
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}  max_err={error:.3e}  tol={tol:.0e}"
        _CRITERIA.append((number, line))
        print(line)
        assert ok, line
    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_CRITERIA):
            terminalreporter.write_line(line)
