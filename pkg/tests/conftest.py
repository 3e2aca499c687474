import os
import sys

sys.path.insert(0, os.path.dirname(__file__))


def pytest_terminal_summary(terminalreporter):
  mod = sys.modules.get("test_acceptance")
  if not mod or not mod.RESULTS:
    return
  terminalreporter.section("acceptance criteria")
  for n in sorted(mod.RESULTS):
    terminalreporter.write_line(mod.RESULTS[n])
