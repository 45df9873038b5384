import numpy as np
import pytest

from walkdist import (
    GraphInputError,
    as_adjacency,
    cycle_graph,
    path_graph,
    perron,
    submatrix_spectral_radius,
)

GOLDEN = (1.0 + np.sqrt(5.0)) / 2.0


def test_perron_p4_root_is_golden_ratio(p4):
    sd = perron(as_adjacency(p4))
    assert sd.rho == pytest.approx(GOLDEN, rel=1e-12)


def test_perron_cycle_is_regular(c4):
    sd = perron(as_adjacency(c4))
    assert sd.rho == pytest.approx(2.0, rel=1e-12)
    assert np.allclose(sd.p, 0.25)


def test_perron_normalizations(multi5):
    sd = perron(as_adjacency(multi5))
    n = multi5.n
    assert sd.p.sum() == pytest.approx(1.0)
    assert np.linalg.norm(sd.p_tilde) == pytest.approx(1.0)
    assert np.allclose(sd.p_prime, np.sqrt(n) * sd.p_tilde)
    assert (sd.p > 0).all()


def test_perron_methods_agree(multi5):
    A = as_adjacency(multi5)
    dense = perron(A, method="dense")
    power = perron(A, method="power")
    assert power.rho == pytest.approx(dense.rho, rel=1e-10)
    assert np.allclose(power.p, dense.p, atol=1e-10)


def test_perron_is_eigenpair(multi5):
    A = as_adjacency(multi5)
    sd = perron(A)
    assert np.abs(A @ sd.p - sd.rho * sd.p).max() < 1e-10


def test_perron_rejects_bad_input():
    with pytest.raises(GraphInputError):
        perron(np.array([[0.0, -1.0], [-1.0, 0.0]]))
    with pytest.raises(GraphInputError):
        perron(np.array([[0.0, 1.0], [2.0, 0.0]]))


def test_submatrix_radius_strictly_smaller(p4, c4, multi5):
    for g in (p4, c4, multi5):
        A = as_adjacency(g)
        rho = perron(A).rho
        for j in range(A.shape[0]):
            assert submatrix_spectral_radius(A, j) < rho


def test_submatrix_radius_known_value(p4):
    # dropping an end of P4 leaves P3, whose root is sqrt(2)
    A = as_adjacency(p4)
    assert submatrix_spectral_radius(A, 0) == pytest.approx(np.sqrt(2.0), rel=1e-12)


def test_paths_root_approaches_two():
    rhos = [perron(as_adjacency(path_graph(n))).rho for n in (3, 5, 9, 15)]
    assert all(b > a for a, b in zip(rhos, rhos[1:]))
    assert rhos[-1] < 2.0
