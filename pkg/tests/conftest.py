import random
import sys
from pathlib import Path

import networkx as nx
import pytest

from tensorchain.network import GENERAL, Tensor, from_tensor_graph, make_network, parse_network

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"


def load(name):
    return parse_network((FIXTURES / name).read_text())


def atlas_networks(max_nodes=5):
    """One general network per non-isomorphic graph with 1..max_nodes nodes."""
    out = []
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if 1 <= n <= max_nodes:
            nodes = [f"t{i}" for i in g.nodes]
            edges = [(f"t{a}", f"t{b}") for a, b in g.edges]
            out.append(from_tensor_graph(nodes, edges))
    return out


def fixture_corpus():
    return atlas_networks() + [load("ex1.net"), load("triangle.net")]


def random_network(rng, max_tensors=5, n_vertices=6):
    """A general network with random covariant and contravariant index sets."""
    vertices = [f"v{i}" for i in range(n_vertices)]
    tensors = []
    for i in range(rng.randint(1, max_tensors)):
        while True:
            cov = frozenset(rng.sample(vertices, rng.randint(1, 3)))
            contra = frozenset(rng.sample(vertices, rng.randint(0, 2)))
            if not (len(cov) == 1 and cov == contra):
                break
        tensors.append(Tensor(f"t{i}", cov, contra))
    return make_network(GENERAL, vertices, tensors)


def random_networks(count=200, seed=20261014):
    rng = random.Random(seed)
    return [random_network(rng) for _ in range(count)]


@pytest.fixture(scope="session")
def corpus():
    return fixture_corpus()


@pytest.fixture
def ex1():
    return load("ex1.net")


@pytest.fixture
def triangle():
    return load("triangle.net")


@pytest.fixture
def single_edge():
    return load("single_edge.net")


@pytest.fixture
def two_cycle():
    return load("two_cycle.net")


@pytest.fixture
def branching():
    return load("branching.net")


@pytest.fixture
def sinks():
    return load("sinks.net")


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
