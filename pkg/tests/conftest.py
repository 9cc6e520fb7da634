_criteria: dict = {}


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    key = props["criterion"]
    if report.when == "call" or report.outcome != "passed":
        ok = report.outcome == "passed" and _criteria.get(key, (True,))[0]
        _criteria[key] = (ok, props.get("title", ""), props.get("seconds"))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for key in sorted(_criteria, key=lambda c: (int(c.rstrip("abc")), c)):
        ok, title, secs = _criteria[key]
        timing = f" [{secs:.2f}s]" if secs is not None else ""
        tr.write_line(f"criterion {key:<3} {'PASS' if ok else 'FAIL'}  {title}{timing}")
