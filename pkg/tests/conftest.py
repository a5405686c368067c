import pytest

_CRITERIA = []


@pytest.fixture
def report_criterion():
    """Record one pass/fail line for the acceptance summary."""
    def record(number, title, ok, detail=""):
        line = "criterion %d %-34s %s%s" % (number, title, "PASS" if ok else "FAIL",
                                           "  (%s)" % detail if detail else "")
        _CRITERIA.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA):
            terminalreporter.write_line(line)
