"""Shared fixtures and the acceptance-criteria summary hook."""

CRITERION_LINES: list[str] = []


def record_criterion(line: str) -> None:
    print(line)
    CRITERION_LINES.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in CRITERION_LINES:
            terminalreporter.write_line(line)
