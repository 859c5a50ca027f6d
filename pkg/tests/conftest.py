import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: int(k[2:])):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
