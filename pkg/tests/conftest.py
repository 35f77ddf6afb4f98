"""Suite-wide reporting helpers.

The acceptance tests record a one-line verdict per criterion; echoing them
in the terminal summary keeps the checklist visible even when every test
passes and pytest swallows stdout.
"""

ACCEPTANCE_LINES = []


def record_acceptance(line: str) -> None:
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance checklist")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
