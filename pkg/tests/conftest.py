import re

_CRITERIA: dict[int, tuple[str, str, float]] = {}
_NAME = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_runtest_logreport(report):
    m = _NAME.search(report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    if report.when == "call" or report.failed:
        outcome = "PASS" if report.passed else "FAIL"
        prev = _CRITERIA.get(n)
        if prev is None or prev[1] == "PASS":
            _CRITERIA[n] = (m.group(2).replace("_", " "), outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        name, outcome, secs = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {outcome}  {name} ({secs:.1f}s)")
