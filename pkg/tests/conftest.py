import sys

import pytest

from schubert_tanner.field import build_field
from schubert_tanner.tanner import BipartiteGraph


@pytest.fixture
def gf2():
    return build_field(2)


@pytest.fixture
def gf3():
    return build_field(3)


@pytest.fixture
def gf4():
    return build_field(2, 2)


@pytest.fixture
def small_graph():
    # V1 = {1,2,3,4}, constraints a ~ {1,2,3} and b ~ {2,3,4}
    return BipartiteGraph.from_sets([1, 2, 3, 4], {"a": [1, 2, 3], "b": [2, 3, 4]})


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
