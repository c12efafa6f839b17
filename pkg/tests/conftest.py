import re

_CRITERION = re.compile(r"test_acceptance\.py::test_(criterion_\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter):
    """One pass/fail line per acceptance criterion, printed unconditionally."""
    lines = {}
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            m = _CRITERION.search(getattr(report, "nodeid", ""))
            if m:
                label = m.group(2).replace("_", " ")
                ok = outcome == "passed"
                lines[m.group(1)] = (label, "PASS" if ok else "FAIL")
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(lines, key=lambda k: int(k.split("_")[1])):
        label, verdict = lines[key]
        num = key.split("_")[1]
        terminalreporter.write_line(f"  [{num}] {label}: {verdict}")
