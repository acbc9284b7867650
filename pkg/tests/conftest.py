"""Shared graph fixtures and seeded random graph factories"""
import numpy as np
import pytest

from src.constants import karate_club
from src.models.graph import Graph, cycle_graph, grid_graph, path_graph


def random_connected_graph(rng: np.random.Generator, n: int, extra_edge_prob: float = 0.3) -> Graph:
    """Random spanning tree plus independent extra edges"""
    edges = set()
    order = rng.permutation(n)
    for i in range(1, n):
        parent = order[rng.integers(0, i)]
        edges.add((min(order[i], parent), max(order[i], parent)))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < extra_edge_prob:
                edges.add((u, v))
    return Graph.from_edge_list(sorted(edges), n)


def random_partition(rng: np.random.Generator, n: int, k: int):
    labels = rng.integers(0, k, size=n)
    return [tuple(int(v) for v in np.flatnonzero(labels == j)) for j in range(k) if np.any(labels == j)]


def brute_force_modularity(g: Graph, communities) -> float:
    a = g.adjacency.toarray()
    k = a.sum(axis=1)
    two_m = a.sum()
    label = {}
    for i, c in enumerate(communities):
        for v in c:
            label[v] = i
    total = 0.0
    for i in range(g.node_count):
        for j in range(g.node_count):
            if label[i] == label[j]:
                total += a[i, j] - k[i] * k[j] / two_m
    return total / two_m


@pytest.fixture
def triangle():
    return Graph.from_edge_list([(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def two_triangles():
    """Triangles {0,1,2} and {3,4,5} joined by the bridge 2-3"""
    return Graph.from_edge_list([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])


@pytest.fixture
def star():
    return Graph.from_edge_list([(0, i) for i in range(1, 6)])


@pytest.fixture
def path5():
    return path_graph(5)


@pytest.fixture
def cycle6():
    return cycle_graph(6)


@pytest.fixture
def grid10():
    return grid_graph(10, 10)


@pytest.fixture
def karate():
    return Graph.from_edge_list(karate_club.EDGES, karate_club.NODE_COUNT)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
