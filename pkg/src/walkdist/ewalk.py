"""Walk distances after the exponential edge-weight transform.

Each edge weight w is mapped to (w/rho) * exp(-1/(alpha*w)) with rho the
Perron root of the original graph. The factor exp(-1/(alpha*w)) < 1 and
the division by rho force the transformed spectral radius below 1, so
the walk series converges for every alpha > 0 without reparameterizing.

Distances use the scale theta_alpha * alpha, where theta_alpha follows a
rational schedule between 1 (alpha -> 0) and theta_infinity
(alpha -> infinity). With that scaling the alpha -> 0 limit is the
weighted shortest-path metric (heavy edges short) and the
alpha -> infinity limit is a "long" distance that, for the right
theta_infinity, coincides exactly with the long-walk distance.

Small alpha makes the transformed weights underflow float64 (exp(-1000)
is zero); the proximity solve is then retried as an extended-precision
Neumann series, which is cheap precisely in that regime because the
transformed weights are minuscule.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, GraphInputError, NumericalError
from .graph import WeightedMultigraph, as_adjacency, map_edge_weights, require_connected
from .limits import SweepPoint, limit_sweep, weighted_shortest_path_matrix
from .spectral import perron
from .walk import DistanceMatrix

__all__ = [
    "ThetaSchedule",
    "indicator_matrix",
    "epsilon_transform",
    "epsilon_weight_matrix",
    "theta_infinity",
    "theta_schedule_for",
    "ewalk_distance",
    "long_ewalk_distance",
    "ewalk_limit_sweep",
]

# Escalate to extended precision when the float64 proximity solve left
# entries this small (or nonpositive): such values carry no usable
# precision for the logarithm.
UNDERFLOW_FLOOR = 1e-250
MAX_NEUMANN_TERMS = 100_000


@dataclass(frozen=True)
class ThetaSchedule:
    """Scale schedule theta(alpha) = (theta_inf*alpha + beta)/(alpha + beta).

    Rational in alpha with theta -> 1 as alpha -> 0 and
    theta -> theta_inf as alpha -> infinity; beta > 0 sets where the
    crossover happens and nothing else.
    """

    theta_inf: float
    beta: float = 1.0

    def __post_init__(self) -> None:
        if self.beta <= 0:
            raise GraphInputError(f"beta must be positive, got {self.beta!r}")
        if self.theta_inf <= 0:
            raise GraphInputError(f"theta_inf must be positive, got {self.theta_inf!r}")

    def __call__(self, alpha: float) -> float:
        if alpha <= 0:
            raise GraphInputError(f"alpha must be positive, got {alpha!r}")
        return (self.theta_inf * alpha + self.beta) / (alpha + self.beta)


def indicator_matrix(A) -> np.ndarray:
    """Edge-count matrix: how many edges sit between each vertex pair.

    For a multigraph, parallel edges count individually and a loop
    counts once; for a bare matrix (a simple weighted graph, possibly
    with loops) this is the 0/1 nonzero pattern. This is the matrix the
    per-edge transform w -> (w/rho)e^(-1/(alpha w)) linearizes to at
    large alpha: each edge contributes its own e^(-1/(alpha w)) factor,
    so the first-order coefficient at a vertex pair is the number of
    edges there, not merely whether one exists. Using the plain 0/1
    pattern on a multigraph gives a limit the finite-alpha distances do
    not converge to.
    """
    if isinstance(A, WeightedMultigraph):
        n = len(A.labels)
        C = np.zeros((n, n))
        for e in A.edges:
            u, v = A.position(e.a), A.position(e.b)
            if u == v:
                C[u, u] += 1.0
            else:
                C[u, v] += 1.0
                C[v, u] += 1.0
        return C
    M = as_adjacency(A)
    return (M != 0).astype(float)


def _require_usable(graph_or_matrix) -> None:
    if isinstance(graph_or_matrix, WeightedMultigraph):
        require_connected(graph_or_matrix)


def _labels_of(graph_or_matrix):
    if isinstance(graph_or_matrix, WeightedMultigraph):
        return graph_or_matrix.labels
    return getattr(graph_or_matrix, "labels", None)


def _transformed_weight(w: float, rho: float, alpha: float) -> float:
    return (w / rho) * float(np.exp(-1.0 / (alpha * w)))


def epsilon_transform(g: WeightedMultigraph, alpha: float) -> WeightedMultigraph:
    """Graph with every edge weight mapped through w -> (w/rho)e^(-1/(alpha w)).

    rho is taken from the untransformed graph. Parallel edges are
    transformed individually (the transform is not additive, so the
    order matters) and re-aggregated only when an adjacency matrix is
    built from the result. Transformed weights can underflow to zero for
    tiny alpha, which the graph type rejects as an invalid weight; that
    is deliberate, the extended-precision path in ewalk_distance does
    not go through a graph object.
    """
    if alpha <= 0:
        raise GraphInputError(f"alpha must be positive, got {alpha!r}")
    require_connected(g)
    rho = perron(as_adjacency(g)).rho
    return map_edge_weights(g, lambda e: _transformed_weight(e.weight, rho, alpha))


def epsilon_weight_matrix(g, alpha: float) -> np.ndarray:
    """Aggregated adjacency matrix of the transformed graph, in float64.

    For a multigraph each parallel edge is transformed on its own weight
    before summation; for a bare matrix the transform applies entrywise.
    Entries may underflow to exactly 0.0 for small alpha.
    """
    if alpha <= 0:
        raise GraphInputError(f"alpha must be positive, got {alpha!r}")
    M = as_adjacency(g)
    rho = perron(M).rho
    n = M.shape[0]
    if isinstance(g, WeightedMultigraph):
        with np.errstate(under="ignore"):
            W = np.zeros((n, n))
            for e in g.edges:
                u, v = g.position(e.a), g.position(e.b)
                w = _transformed_weight(e.weight, rho, alpha)
                W[u, v] += w
                if u != v:
                    W[v, u] += w
        return W
    with np.errstate(under="ignore"):
        return np.where(M > 0, (M / rho) * np.exp(-1.0 / (alpha * np.where(M > 0, M, 1.0))), 0.0)


def theta_infinity(A) -> float:
    """Limit scale theta_inf = (2/n) * (p'(A/rho)p) / (p'Cp), C the
    edge-count matrix of indicator_matrix().

    The ratio is a p-weighted average of the normalized weights a_ij/rho
    per edge; multiplying the long-e-walk distance by this particular
    value makes it equal the long-walk distance. Pass the multigraph
    itself (not its aggregated adjacency) when parallel edges exist, so
    C counts them.
    """
    M = as_adjacency(A)
    sd = perron(M)
    counts = indicator_matrix(A)
    return float((2.0 / M.shape[0]) * (sd.p @ (M / sd.rho) @ sd.p)
                 / (sd.p @ counts @ sd.p))


def theta_schedule_for(A, beta: float = 1.0) -> ThetaSchedule:
    return ThetaSchedule(theta_inf=theta_infinity(A), beta=beta)


def _log_proximity_float64(W: np.ndarray) -> np.ndarray | None:
    """log((I - W)^(-1)) in float64, or None when precision ran out."""
    n = W.shape[0]
    R = np.linalg.solve(np.eye(n) - W, np.eye(n))
    if R.min() <= 0.0:
        return None
    off = R[~np.eye(n, dtype=bool)]
    if off.size and off.min() < UNDERFLOW_FLOOR:
        return None
    return np.log(R)


def _epsilon_weight_matrix_longdouble(g, alpha: float) -> np.ndarray:
    """The transformed adjacency rebuilt in extended precision.

    The float64 builder can lose edges entirely (exp(-1/(alpha*w))
    underflows to 0.0 near alpha ~ 1e-3 on unit weights), so the
    fallback path recomputes the transform from the original weights in
    longdouble rather than upcasting an already-degraded matrix.
    """
    M = as_adjacency(g)
    rho = np.longdouble(perron(M).rho)
    a = np.longdouble(alpha)
    n = M.shape[0]
    with np.errstate(under="ignore"):
        if isinstance(g, WeightedMultigraph):
            W = np.zeros((n, n), dtype=np.longdouble)
            for e in g.edges:
                u, v = g.position(e.a), g.position(e.b)
                w = np.longdouble(e.weight)
                t = (w / rho) * np.exp(-1.0 / (a * w))
                W[u, v] += t
                if u != v:
                    W[v, u] += t
            return W
        Mld = M.astype(np.longdouble)
        pos = Mld > 0
        safe = np.where(pos, Mld, np.longdouble(1.0))
        return np.where(pos, (Mld / rho) * np.exp(-1.0 / (a * safe)),
                        np.longdouble(0.0))


def _log_proximity_longdouble(Wld: np.ndarray) -> np.ndarray:
    """log((I - W)^(-1)) via a Neumann series in extended precision.

    Used when float64 underflowed, which only happens for tiny
    transformed weights; the series then converges in roughly
    n + a few terms. LAPACK has no extended-precision solvers, hence the
    explicit series.
    """
    n = Wld.shape[0]
    W = np.asarray(Wld, dtype=np.longdouble)
    row_sum = float(W.sum(axis=1).max())
    if row_sum >= 1.0:
        raise NumericalError(
            f"transformed weight matrix has row sums up to {row_sum}; series diverges"
        )
    R = np.eye(n, dtype=np.longdouble)
    term = np.eye(n, dtype=np.longdouble)
    with np.errstate(under="ignore"):
        for k in range(1, MAX_NEUMANN_TERMS + 1):
            term = term @ W
            R = R + term
            if k >= n and np.all(term <= np.longdouble(1e-25) * R):
                break
        else:
            raise ConvergenceError(
                f"walk-weight series did not settle in {MAX_NEUMANN_TERMS} terms"
            )
        if (R <= 0).any():
            raise NumericalError(
                "transformed edge weights underflowed even extended precision; "
                "alpha is too small for this graph"
            )
        return np.log(R).astype(np.float64)


def ewalk_distance(g, alpha: float, schedule: ThetaSchedule | None = None) -> DistanceMatrix:
    """Walk distance of the transformed graph, scaled by theta_alpha*alpha.

    d(i, j) = -theta_alpha * alpha * ln( r_ij / sqrt(r_ii * r_jj) ) with
    r = (I - A(alpha))^(-1) of the transformed adjacency. Graph-geodetic
    for every alpha > 0. The default schedule uses theta_infinity of the
    input graph with beta = 1.
    """
    if alpha <= 0:
        raise GraphInputError(f"alpha must be positive, got {alpha!r}")
    M = as_adjacency(g)
    _require_usable(g)
    n = M.shape[0]
    W = epsilon_weight_matrix(g, alpha)
    # The transform guarantees rho(A(alpha)) < 1; trust but verify.
    rho_alpha = float(np.linalg.eigvalsh(W)[-1])
    if rho_alpha >= 1.0:
        raise NumericalError(
            f"transformed spectral radius {rho_alpha} >= 1 at alpha={alpha!r}"
        )
    if schedule is None:
        schedule = theta_schedule_for(g)
    scale = schedule(alpha) * alpha
    logR = _log_proximity_float64(W)
    if logR is None:
        logR = _log_proximity_longdouble(_epsilon_weight_matrix_longdouble(g, alpha))
    h = np.diag(logR)
    D = scale * (0.5 * (h[:, None] + h[None, :]) - logR)
    D = 0.5 * (D + D.T)
    np.fill_diagonal(D, 0.0)
    return DistanceMatrix(entries=D, family="e-walk", param=f"alpha={alpha!r}",
                          labels=_labels_of(g))


def long_ewalk_distance(A, theta_inf: float | None = None) -> DistanceMatrix:
    """The alpha -> infinity limit of the e-walk distances, in closed form.

    d(i, j) = (theta_inf/2) * [ (1/p_i) * row i of (Lambda minor at j)^(-1)
              applied to (edge-count rows without j) @ p  +  symmetric term ].
    With theta_inf = theta_infinity(A) this equals long_walk_distance(A)
    exactly; any other positive value just rescales the matrix.
    """
    M = as_adjacency(A)
    _require_usable(A)
    sd = perron(M)
    n = M.shape[0]
    if theta_inf is None:
        theta_inf = theta_infinity(A)
    indicator = indicator_matrix(A)
    Lam = sd.rho * np.eye(n) - M
    C = np.zeros((n, n))
    for j in range(n):
        keep = [k for k in range(n) if k != j]
        x = np.linalg.solve(Lam[np.ix_(keep, keep)], indicator[keep, :] @ sd.p)
        C[keep, j] = x / sd.p[keep]
    D = (theta_inf / 2.0) * (C + C.T)
    np.fill_diagonal(D, 0.0)
    return DistanceMatrix(entries=0.5 * (D + D.T), family="long-ewalk",
                          param="limit", labels=_labels_of(A))


def ewalk_limit_sweep(g, alphas, direction: str,
                      schedule: ThetaSchedule | None = None) -> tuple[SweepPoint, ...]:
    """Deviation of e-walk distances from the appropriate limit metric.

    direction="small-alpha" compares against the weighted shortest path
    metric; direction="large-alpha" against the long-e-walk closed form.
    """
    if direction == "small-alpha":
        reference = weighted_shortest_path_matrix(g)
    elif direction == "large-alpha":
        reference = long_ewalk_distance(g)
    else:
        raise GraphInputError(
            f"direction must be 'small-alpha' or 'large-alpha', got {direction!r}"
        )
    if schedule is None:
        schedule = theta_schedule_for(g)
    return limit_sweep(lambda graph, a: ewalk_distance(graph, a, schedule),
                       g, alphas, reference)
