import re

_CRITERIA = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2))
    if report.when == "call" or report.failed:
        if report.failed:
            crash = getattr(report.longrepr, "reprcrash", None)
            message = crash.message if crash is not None else str(report.longrepr)
            _CRITERIA[key] = ("FAIL", message.splitlines()[0][:400])
        elif key not in _CRITERIA:
            _CRITERIA[key] = ("PASS", "")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), (status, detail) in sorted(_CRITERIA.items()):
        line = f"criterion {num}: {name}: {status}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
