from __future__ import annotations

import itertools

import networkx as nx
import numpy as np
import pytest

from spectral_kind.graphcore import Graph, from_edges


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run tests marked slow")


_CRITERIA: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA:
            terminalreporter.write_line(line)


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion, echoed at the end of the run."""

    def record(label: str, ok: bool, detail: str = "") -> None:
        line = f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else "")
        _CRITERIA.append(line)
        print(line)

    return record


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


# ------------------------------------------------------------ graph helpers


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph, name: str | None = None) -> Graph:
    h = nx.convert_node_labels_to_integers(h, ordering="sorted")
    return from_edges(h.number_of_nodes(), list(h.edges()), name=name)


def random_graph(rng: np.random.Generator, n: int, p: float) -> Graph:
    upper = np.triu(rng.random((n, n)) < p, 1)
    return Graph(upper | upper.T)


def random_connected_graph(rng: np.random.Generator, n: int, p: float) -> Graph:
    """Random spanning tree plus independent extra edges with probability p."""
    upper = np.triu(rng.random((n, n)) < p, 1)
    adj = upper | upper.T
    perm = rng.permutation(n)
    for i in range(1, n):
        a, b = perm[i], perm[int(rng.integers(0, i))]
        adj[a, b] = adj[b, a] = True
    return Graph(adj)


def random_connected_regular(rng: np.random.Generator, n: int, d: int) -> Graph:
    while True:
        h = nx.random_regular_graph(d, n, seed=int(rng.integers(2**31)))
        if nx.is_connected(h):
            return from_nx(h)


def alpha_k_bruteforce(g: Graph, k: int) -> int:
    """Exhaustive alpha_k over all vertex subsets; only for small n."""
    n = g.n
    if n > 16:
        raise ValueError("brute force is limited to n <= 16")
    dist = dict(nx.all_pairs_shortest_path_length(to_nx(g)))
    conflicts = [(u, v) for u, v in itertools.combinations(range(n), 2) if v in dist[u] and dist[u][v] <= k]
    masks = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(masks.size, dtype=bool)
    for u, v in conflicts:
        both = (1 << u) | (1 << v)
        ok &= (masks & both) != both
    sizes = np.zeros(masks.size, dtype=np.int64)
    for i in range(n):
        sizes += (masks >> i) & 1
    return int(sizes[ok].max())


def alpha_k_clique_oracle(g: Graph, k: int) -> int:
    """alpha_k as the clique number of the complement of G^k, via networkx."""
    h = nx.power(to_nx(g), k) if k > 1 else to_nx(g)
    return len(nx.max_weight_clique(nx.complement(h), weight=None)[0])


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
