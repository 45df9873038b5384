import numpy as np
import pytest

from walkdist import (
    GraphInputError,
    as_adjacency,
    as_laplacian,
    balance_graph,
    cycle_graph,
    general_balance,
    log_forest_distance,
    long_walk_distance,
    perron,
    resistance_distance,
    similarity_transform,
    walk_distance,
)


def test_balance_graph_equalizes_degrees(multi5):
    bal = balance_graph(multi5)
    A = as_adjacency(bal.result)
    degrees = A.sum(axis=1)
    assert np.allclose(degrees, bal.m)
    assert bal.m == pytest.approx(as_adjacency(multi5).sum(axis=1).max())


def test_balance_graph_keeps_laplacian(multi5):
    bal = balance_graph(multi5, m=7.0)
    assert np.allclose(as_laplacian(multi5), as_laplacian(bal.result))


def test_balance_graph_spectral_radius_is_m(multi5):
    for m in (None, 6.0, 9.5):
        bal = balance_graph(multi5, m)
        sd = perron(as_adjacency(bal.result))
        assert sd.rho == pytest.approx(bal.m, rel=1e-10)
        assert np.allclose(sd.p, 1.0 / multi5.n, atol=1e-10)


def test_balance_graph_rejects_small_m(multi5):
    with pytest.raises(GraphInputError):
        balance_graph(multi5, m=0.5)


def test_balanced_regular_graph_is_unchanged(c4):
    bal = balance_graph(c4)
    assert bal.result.edges == c4.edges


def test_general_balance_row_sums(multi5):
    A, m = general_balance(multi5)
    assert np.allclose(A.sum(axis=1), m / (m + 1.0))
    assert (A >= 0).all()
    # accepts a Laplacian matrix directly
    A2, m2 = general_balance(as_laplacian(multi5), m_alpha=m)
    assert np.allclose(A, A2) and m == m2
    with pytest.raises(GraphInputError):
        general_balance(as_adjacency(multi5))  # rows don't sum to zero


def test_log_forest_equals_walk_on_balance_graph(p4, multi5):
    # adding degree-equalizing loops turns the forest proximity into a
    # walk resolvent; distances agree for every alpha and admissible m
    for g in (p4, multi5):
        m_min = float(as_adjacency(g).sum(axis=1).max())
        for alpha in (0.5, 2.0):
            lf = np.asarray(log_forest_distance(g, alpha))
            for m in (m_min, m_min + 3.0):
                bal = balance_graph(g, m).result
                wd = np.asarray(walk_distance(bal, alpha))
                assert np.abs(lf - wd).max() <= 1e-10 * np.abs(lf).max()


def test_resistance_equals_long_walk_on_balance_graph(p4, multi5):
    for g in (p4, multi5):
        bal = balance_graph(g).result
        r = np.asarray(resistance_distance(g))
        lw = np.asarray(long_walk_distance(as_adjacency(bal)))
        assert np.abs(r - lw).max() <= 1e-10 * np.abs(r).max()


def test_similarity_transform_fixes_regular_graphs(c4):
    out = similarity_transform(c4)
    assert np.allclose(as_adjacency(out), as_adjacency(c4))


def test_long_walk_equals_resistance_after_similarity(p4, wp4, multi5):
    for g in (p4, wp4, multi5):
        lw = np.asarray(long_walk_distance(as_adjacency(g)))
        r = np.asarray(resistance_distance(similarity_transform(g)))
        assert np.abs(lw - r).max() <= 1e-10 * np.abs(lw).max()


def test_similarity_transform_keeps_structure(multi5):
    out = similarity_transform(multi5)
    assert out.labels == multi5.labels
    assert len(out.edges) == len(multi5.edges)
