from collections import defaultdict

_outcomes: dict[str, list[tuple[str, bool]]] = defaultdict(list)


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for key in report.keywords:
        if key.startswith("criterion_"):
            _outcomes[key.removeprefix("criterion_")].append((report.nodeid, report.passed))


def pytest_collection_modifyitems(items):
    # expose the criterion id as a keyword so the log report can see it
    for item in items:
        for mark in item.iter_markers("criterion"):
            item.keywords[f"criterion_{mark.args[0]}"] = True


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_outcomes, key=lambda c: int(c[1:])):
        results = _outcomes[cid]
        failed = [nodeid.split("::")[-1] for nodeid, ok in results if not ok]
        verdict = "FAIL" if failed else "PASS"
        line = f"{cid}: {verdict} ({len(results) - len(failed)}/{len(results)} checks)"
        if failed:
            line += " failing: " + ", ".join(failed)
        terminalreporter.write_line(line)
