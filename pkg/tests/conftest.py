from __future__ import annotations

import json
import os
import random
from importlib import resources

import pytest
from hypothesis import HealthCheck, settings

from girthcolor.formats import decode_graph6, parse_adjacency_list
from girthcolor.graph import Graph
from girthcolor.lcf import parse_lcf_table, realize

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def pytest_addoption(parser):
    parser.addoption("--slow", action="store_true", default=False, help="run the long exact colouring checks")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long exact colouring runs")


def slow_enabled(config) -> bool:
    return config.getoption("--slow") or os.environ.get("GIRTHCOLOR_SLOW") == "1"


def pytest_collection_modifyitems(config, items):
    if slow_enabled(config):
        return
    skip = pytest.mark.skip(reason="slow tier: pass --slow or set GIRTHCOLOR_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def fixture_text(name: str) -> str:
    return (resources.files("girthcolor") / "fixtures" / name).read_text()


def load_fixture(name: str) -> Graph:
    text = fixture_text(name)
    if name.endswith(".lcf"):
        return realize(parse_lcf_table(text))
    if name.endswith(".adj"):
        return parse_adjacency_list(text)
    return decode_graph6(text.strip())


@pytest.fixture(scope="session")
def manifest() -> dict:
    return json.loads(fixture_text("manifest.json"))


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


# one line per acceptance criterion, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
