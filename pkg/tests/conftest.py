import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


def pytest_configure(config):
    config.acceptance_results = {}
    config.addinivalue_line("markers", "acceptance: exit criteria (slow)")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter, config):
    results = config.acceptance_results
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(results):
        ok, note = results[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {note}")
