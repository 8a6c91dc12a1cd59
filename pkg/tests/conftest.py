from pathlib import Path

import pytest

from flowpoly import MultiGraph, load_graph

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

CORPUS = ["loop", "b2", "b3", "b4", "c3", "k4", "theta", "bridge", "disjoint"]


def fixture_graph(name: str) -> MultiGraph:
    return load_graph(FIXTURES / f"{name}.json")


def bouquet(k: int) -> MultiGraph:
    """Two vertices joined by k parallel edges."""
    return MultiGraph.from_edges(2, [(0, 1)] * k)


@pytest.fixture
def b4():
    return bouquet(4)


@pytest.fixture(params=CORPUS)
def corpus_graph(request):
    return fixture_graph(request.param)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
