"""Perron root and Perron vector of symmetric nonnegative matrices.

The Perron root rho is the largest eigenvalue; for a connected graph it is
simple and carries a strictly positive eigenvector. The Perron vector p is
normalized to sum 1 (a probability vector); derived scalings p_tilde
(unit 2-norm) and p_prime (sqrt(n) * p_tilde) are carried along because
the limit formulas use all three.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ConvergenceError, DisconnectedGraphError, DivergenceError, GraphInputError
from .graph import as_adjacency

__all__ = [
    "SpectralData",
    "perron",
    "submatrix_spectral_radius",
    "eigenprojection_limit_check",
]

DENSE_CUTOFF = 64
POWER_TOL = 1e-12
POWER_MAX_ITER = 100_000
POLISH_STEPS = 2


@dataclass(frozen=True)
class SpectralData:
    """Perron root and the three normalizations of the Perron vector."""

    rho: float
    p: np.ndarray        # positive, sums to 1
    p_tilde: np.ndarray  # positive, unit 2-norm
    p_prime: np.ndarray  # sqrt(n) * p_tilde, so that ||p_prime||_2^2 = n

    @cached_property
    def P(self) -> np.ndarray:
        return np.diag(self.p)

    @cached_property
    def P_prime(self) -> np.ndarray:
        return np.diag(self.p_prime)

    @property
    def n(self) -> int:
        return self.p.shape[0]


def _validate_input(A: np.ndarray) -> None:
    if A.shape[0] < 2:
        raise GraphInputError("need a matrix of order >= 2")
    if not np.allclose(A, A.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(A).max())):
        raise GraphInputError("matrix must be symmetric")
    if (A < 0).any():
        raise GraphInputError("matrix must be nonnegative")
    # Connectivity of the support pattern stands in for irreducibility.
    n = A.shape[0]
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in np.nonzero(A[v])[0]:
            if u not in seen:
                seen.add(int(u))
                stack.append(int(u))
    if len(seen) != n:
        raise DisconnectedGraphError(
            "adjacency pattern is reducible (graph disconnected); Perron vector undefined"
        )


def _polish(A: np.ndarray, rho0: float, v0: np.ndarray) -> tuple[float, np.ndarray]:
    # Rayleigh-quotient iteration from an already-good eigenpair. The raw
    # eigh pair carries residuals around 1e-15 * ||A||, which is not quite
    # enough for the identities evaluated at t = 1/rho: those divide by
    # rho - rho(minor) and amplify the last digits of rho. Two iterations
    # reach working precision (convergence is cubic from a good start);
    # if anything goes sideways, keep the unpolished pair.
    n = A.shape[0]
    x = v0 / np.linalg.norm(v0)
    if x[np.abs(x).argmax()] < 0:
        x = -x
    lam = float(x @ (A @ x))
    for _ in range(POLISH_STEPS):
        try:
            y = np.linalg.solve(A - lam * np.eye(n), x)
        except np.linalg.LinAlgError:
            break
        norm = np.linalg.norm(y)
        if not np.isfinite(norm) or norm == 0.0:
            break
        x = y / norm
        if x[np.abs(x).argmax()] < 0:
            x = -x
        lam = float(x @ (A @ x))
    if (x > 0).all() and abs(lam - rho0) <= 1e-8 * max(1.0, abs(rho0)):
        return lam, x
    return float(rho0), v0


def _finalize(rho: float, v: np.ndarray) -> SpectralData:
    if v[0] < 0:
        v = -v
    if (v <= 0).any():
        # Should not happen for an irreducible nonnegative matrix.
        raise ConvergenceError("computed Perron vector is not strictly positive")
    p = v / v.sum()
    p_tilde = p / np.linalg.norm(p)
    p_prime = np.sqrt(p.shape[0]) * p_tilde
    return SpectralData(rho=float(rho), p=p, p_tilde=p_tilde, p_prime=p_prime)


def _perron_dense(A: np.ndarray) -> SpectralData:
    eigenvalues, vectors = np.linalg.eigh(A)
    return _finalize(*_polish(A, eigenvalues[-1], vectors[:, -1]))


def _perron_power(A: np.ndarray) -> SpectralData:
    # Plain power iteration oscillates on bipartite graphs (the spectrum
    # contains -rho), so iterate on the shifted matrix A + sigma*I, which
    # moves everything strictly positive without changing eigenvectors.
    sigma = float(A.sum(axis=1).max())
    M = A + sigma * np.eye(A.shape[0])
    x = np.full(A.shape[0], 1.0 / np.sqrt(A.shape[0]))
    for _ in range(POWER_MAX_ITER):
        y = M @ x
        norm = np.linalg.norm(y)
        x_next = y / norm
        rayleigh = float(x_next @ (A @ x_next))
        residual = np.linalg.norm(A @ x_next - rayleigh * x_next)
        x = x_next
        scale = max(abs(rayleigh), 1e-30)
        if residual <= POWER_TOL * scale:
            return _finalize(*_polish(A, rayleigh, x))
    raise ConvergenceError(
        f"power iteration did not reach residual {POWER_TOL:g} in {POWER_MAX_ITER} steps"
    )


def perron(A, method: str = "auto") -> SpectralData:
    """Perron root and vector of a symmetric nonnegative irreducible matrix.

    Parameters
    ----------
    A
        Graph, LabeledMatrix, or array.
    method
        "dense" for a full symmetric eigendecomposition, "power" for
        shifted power iteration with a Rayleigh-quotient stopping rule,
        "auto" to pick dense up to order 64 and power iteration above.
    """
    M = as_adjacency(A)
    _validate_input(M)
    if method == "auto":
        method = "dense" if M.shape[0] <= DENSE_CUTOFF else "power"
    if method == "dense":
        return _perron_dense(M)
    if method == "power":
        return _perron_power(M)
    raise ValueError(f"unknown method {method!r}")


def submatrix_spectral_radius(A, j) -> float:
    """Spectral radius of A with vertex j's row and column removed.

    Strictly smaller than rho(A) for irreducible A; the gap is what makes
    the hitting-weight formulas valid at t = 1/rho(A).
    """
    M = as_adjacency(A)
    if M.shape[0] < 2:
        raise GraphInputError("need a matrix of order >= 2")
    pos = _vertex_position(A, j, M.shape[0])
    keep = [i for i in range(M.shape[0]) if i != pos]
    sub = M[np.ix_(keep, keep)]
    return float(np.linalg.eigvalsh(sub)[-1])


def _vertex_position(A, j, n: int) -> int:
    if isinstance(j, str):
        labels = getattr(A, "labels", None)
        if labels is None:
            raise GraphInputError("string vertex ids need a labeled matrix or graph")
        return list(labels).index(j)
    pos = int(j)
    if not 0 <= pos < n:
        raise GraphInputError(f"vertex position {pos} out of range")
    return pos


def eigenprojection_limit_check(A, t_sequence) -> np.ndarray:
    """Deviation of (1/t - rho) * R_t from its rank-one limit, per t.

    As t increases toward 1/rho, (1/t - rho) * (I - tA)^(-1) approaches
    rho * p_tilde p_tilde^T. Returns the sup-norm (max absolute entry)
    deviation for each t in the sequence; for schedules approaching
    1/rho the deviations should decrease.
    """
    M = as_adjacency(A)
    sd = perron(M)
    limit = sd.rho * np.outer(sd.p_tilde, sd.p_tilde)
    n = M.shape[0]
    deviations = []
    for t in np.atleast_1d(np.asarray(t_sequence, dtype=float)):
        if t <= 0 or t >= 1.0 / sd.rho:
            raise DivergenceError(
                f"t={t!r} outside (0, 1/rho) with rho={sd.rho!r}; series diverges"
            )
        R = np.linalg.solve(np.eye(n) - t * M, np.eye(n))
        deviations.append(np.abs((1.0 / t - sd.rho) * R - limit).max())
    return np.asarray(deviations)
