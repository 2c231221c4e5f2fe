"""Shared pytest plumbing: a per-criterion summary for the acceptance suite."""

_acceptance_outcomes: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call":
        _acceptance_outcomes[report.nodeid] = report.outcome
    elif report.when == "setup" and report.outcome != "passed":
        _acceptance_outcomes[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_outcomes:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for nodeid in sorted(_acceptance_outcomes):
        outcome = _acceptance_outcomes[nodeid]
        label = {"passed": "PASS", "failed": "FAIL"}.get(outcome, outcome.upper())
        name = nodeid.split("::")[-1]
        terminalreporter.write_line(f"[{label}] {name}")
