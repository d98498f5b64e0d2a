import pytest

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, label): acceptance criterion a test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        number, label = marker.args
        entry = _CRITERIA.setdefault(number, {"label": label, "parts": []})
        if hasattr(report, "wasxfail"):
            status = "known failure: " + report.wasxfail if report.skipped else "unexpected pass"
            ok = False
        else:
            ok = report.passed
            status = "ok" if ok else "failed"
        entry["parts"].append((item.name, ok, status))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_CRITERIA, key=int):
        entry = _CRITERIA[number]
        ok = all(p[1] for p in entry["parts"])
        tr.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number}: {entry['label']}")
        for name, part_ok, status in entry["parts"]:
            if not part_ok:
                tr.write_line(f"        {name}: {status}")
