import sys
from pathlib import Path

# Make the shared oracle helpers importable from every test module.
sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    lines = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            name = getattr(report, "nodeid", "")
            if "test_acceptance.py::test_criterion_" in name:
                short = name.split("::", 1)[1]
                lines.append((short, outcome.upper()))
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for short, outcome in sorted(lines):
            terminalreporter.write_line(f"{short}: {outcome}")
