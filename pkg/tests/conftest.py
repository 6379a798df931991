import pytest

_criterion_log = {}


@pytest.fixture
def record_criterion():
    """Collect acceptance verdicts so the summary can print one line each."""

    def _record(number, passed, note=""):
        _criterion_log[number] = (passed, note)

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _criterion_log:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criterion_log):
        passed, note = _criterion_log[number]
        verdict = "PASS" if passed else "FAIL"
        line = f"criterion {number:02d}: {verdict}"
        if note:
            line += f" ({note})"
        terminalreporter.write_line(line)
