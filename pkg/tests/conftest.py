from hypothesis import settings

from . import acceptance_log

# fixed seeds keep every run, and so every report, identical
settings.register_profile("repro", derandomize=True, deadline=None, print_blob=True)
settings.load_profile("repro")


def pytest_terminal_summary(terminalreporter):
    rows = acceptance_log.lines()
    if rows:
        terminalreporter.section("acceptance criteria")
        for row in rows:
            terminalreporter.write_line(row)
