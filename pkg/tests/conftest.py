"""Test-session plumbing: print the acceptance scoreboard after the run."""

import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # test_acceptance registers one entry per criterion as its tests run;
    # emit them here so the report survives pytest's output capture.
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        name, ok = mod.RESULTS[num]
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d}: {status}  {name}")
