import os
import sys

import pytest

from rhomotopy import config as rh_config
from rhomotopy.spectral import clear_cache

sys.path.insert(0, os.path.dirname(__file__))

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, label): acceptance criterion")
    config.addinivalue_line("markers", "nodebug: run without the extra postcondition checks")


@pytest.fixture(autouse=True)
def debug_checks(request):
    """Turn on internal postcondition checks unless the test opts out."""
    old = rh_config.DEBUG
    rh_config.set_debug(request.node.get_closest_marker("nodebug") is None)
    clear_cache()
    yield
    rh_config.set_debug(old)


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, label = mark.args
    entry = _criteria.setdefault(number, {"label": label, "ok": True, "seen": False})
    if call.when == "call" or call.excinfo is not None:
        entry["seen"] = True
        if call.excinfo is not None:
            entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        status = "PASS" if entry["ok"] and entry["seen"] else "FAIL"
        terminalreporter.write_line(f"{status} criterion {number:2d}: {entry['label']}")
