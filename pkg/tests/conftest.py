import random

import networkx as nx
import pytest

from packcolor.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    nodes = sorted(h.nodes())
    idx = {v: i for i, v in enumerate(nodes)}
    return Graph.from_edges(len(nodes), [(idx[u], idx[v]) for u, v in h.edges()])


@pytest.fixture
def rng():
    return random.Random(20240611)


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, str] = {}


def pytest_runtest_logreport(report):
    crit = getattr(report, "acceptance", None)
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        num, title = crit
        status = "PASS" if report.passed else "FAIL"
        ACCEPTANCE[num] = f"[{status}] criterion {num}: {title}"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        outcome.get_result().acceptance = marker.args


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for num in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[num])
