import pytest

_outcomes = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, label = mark.args
    failed = report.failed
    passed = report.when == "call" and report.passed
    if failed or passed or report.skipped:
        previous = _outcomes.get(number)
        status = "FAIL" if failed else "SKIP" if report.skipped else "PASS"
        if previous is None or previous[0] == "PASS":
            detail = dict(item.user_properties).get("detail", "")
            _outcomes[number] = (status, label, detail)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        status, label, detail = _outcomes[number]
        line = f"[{status}] {number:>2}. {label}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
    passed = sum(s == "PASS" for s, _, _ in _outcomes.values())
    terminalreporter.write_line(f"{passed}/{len(_outcomes)} criteria pass")
