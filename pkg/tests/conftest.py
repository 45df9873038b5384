"""Shared fixtures: small named graphs and a seeded multigraph generator."""

import numpy as np
import pytest

from walkdist import EdgeRecord, WeightedMultigraph, cycle_graph, path_graph


@pytest.fixture
def k2():
    return path_graph(2)


@pytest.fixture
def p4():
    return path_graph(4)


@pytest.fixture
def p5():
    return path_graph(5)


@pytest.fixture
def c4():
    return cycle_graph(4)


@pytest.fixture
def wp4():
    # terminal weights sqrt(2), interior 1: adjacent long-walk distances 3/4
    r = float(np.sqrt(2.0))
    return path_graph(4, [r, 1.0, r])


@pytest.fixture
def multi5():
    """Five vertices with a parallel pair, a loop, and a chord."""
    edges = (
        EdgeRecord("a", "b", 1.2),
        EdgeRecord("a", "b", 0.7),
        EdgeRecord("b", "c", 1.0),
        EdgeRecord("c", "c", 0.9),
        EdgeRecord("c", "d", 1.5),
        EdgeRecord("d", "e", 0.6),
        EdgeRecord("b", "d", 1.1),
    )
    return WeightedMultigraph(labels=("a", "b", "c", "d", "e"), edges=edges)


def random_multigraph(rng, n, extra_edges=2, loops=1, parallels=1,
                      lo=0.5, hi=2.0):
    """Connected weighted multigraph: random spanning tree plus extras."""
    labels = tuple(str(i) for i in range(1, n + 1))
    edges = []
    order = rng.permutation(n)
    for k in range(1, n):
        a, b = int(order[k]), int(order[int(rng.integers(0, k))])
        edges.append(EdgeRecord(labels[a], labels[b], float(rng.uniform(lo, hi))))
    for _ in range(extra_edges):
        a, b = (int(x) for x in rng.integers(0, n, size=2))
        if a == b:
            continue
        edges.append(EdgeRecord(labels[a], labels[b], float(rng.uniform(lo, hi))))
    for _ in range(loops):
        v = int(rng.integers(0, n))
        edges.append(EdgeRecord(labels[v], labels[v], float(rng.uniform(lo, hi))))
    for _ in range(parallels):
        base = edges[int(rng.integers(0, n - 1))]
        edges.append(EdgeRecord(base.a, base.b, float(rng.uniform(lo, hi))))
    return WeightedMultigraph(labels=labels, edges=tuple(edges))
