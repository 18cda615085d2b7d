import re

_ACCEPTANCE: dict = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_(ac\d+)_(\w+)", report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[m.group(1).upper()] = (report.outcome, m.group(2))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE, key=lambda s: int(s[2:])):
        outcome, name = _ACCEPTANCE[key]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{key} {verdict}  {name}")
