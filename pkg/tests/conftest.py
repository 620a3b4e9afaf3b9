"""Collects the acceptance-criterion verdict lines and echoes them in the
terminal summary, so each criterion shows one PASS/FAIL line even under
pytest's output capturing."""

CRITERION_LINES = []


def record_criterion(line):
    CRITERION_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERION_LINES,
                           key=lambda s: int(s.split(":")[0].split()[1])):
            terminalreporter.write_line(line)
