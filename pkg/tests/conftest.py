import pytest

ACCEPTANCE = {}


@pytest.fixture
def record_criterion():
    def record(number, title, ok, detail=""):
        ACCEPTANCE[number] = (title, ok, detail)
        print(_line(number, title, ok, detail))
        return ok
    return record


def _line(number, title, ok, detail):
    status = "PASS" if ok else "FAIL"
    return f"criterion {number:2d} [{status}] {title}" + (f" ({detail})" if detail else "")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        terminalreporter.write_line(_line(number, *ACCEPTANCE[number]))
