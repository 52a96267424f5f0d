import math

import numpy as np
import pytest

from fusionframes.model import SpectrumSpec

# Reference instance: lambda = (11/4, 11/4, 10/4), eight unit-weight lines in R^3.
GOLDEN_SPEC = SpectrumSpec((11 / 4, 11 / 4, 10 / 4), 8, 1)
GOLDEN_W = np.array([
    [1, 0, 0],
    [1, 0, 0],
    [math.sqrt(3 / 8), math.sqrt(5 / 8), 0],
    [math.sqrt(3 / 8), -math.sqrt(5 / 8), 0],
    [0, 1, 0],
    [0, math.sqrt(1 / 4), math.sqrt(3 / 4)],
    [0, math.sqrt(1 / 4), -math.sqrt(3 / 4)],
    [0, 0, 1],
])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_criteria: dict[int, dict] = {}


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when not in ("setup", "call"):
        return
    n, title = mark.args
    entry = _criteria.setdefault(n, {"title": title, "ok": True, "tests": 0})
    if call.when == "call":
        entry["tests"] += 1
    if call.excinfo is not None and not call.excinfo.errisinstance(pytest.skip.Exception):
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        e = _criteria[n]
        status = "PASS" if e["ok"] and e["tests"] else "FAIL"
        tests = f"{e['tests']} test" + ("s" if e["tests"] != 1 else "")
        terminalreporter.write_line(f"criterion {n:2d} {status}  {e['title']} ({tests})")
