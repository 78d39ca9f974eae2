"""Edge-state Markov chain for the pure-growth model.

The state of an edge is the ordered pair of its endpoint degrees.  One growth
step either leaves the edge in place (each endpoint independently may be hit
by one of the m new links) or, seen from a uniformly re-sampled edge, replaces
it by one of the m freshly created edges whose state is (m, k') with k'
distributed like one-plus-a-uniform-node's-degree.  Iterating the induced map
on edge-state distributions gives the exact finite-time law; its t -> infinity
fixed point satisfies a closed recursion with coefficients m/(2m+1) and
1/(2m+1), which is also computed directly and via generating functions.

Degrees are truncated to a window [m, max_k]; probability leaving the window
is accumulated in ``tail_mass``, never dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError, InvalidStateError
from .stats import DIRECTED, UNDIRECTED, _check_mode, _pearson_from_entries

__all__ = [
    "TheoryParams",
    "EdgeStateDistribution",
    "StationaryGrid",
    "GFRow",
    "exponential_degree_dist",
    "one_step_transition_directed",
    "transient_start",
    "transient_step_directed",
    "transient_step_undirected",
    "transient_run",
    "stationary_directed",
    "stationary_undirected",
    "stationary_grid",
    "fixed_point_map",
    "gf_row_directed",
    "gf_rows_undirected",
    "grid_r",
    "grid_knn",
    "tail_mass",
    "entries_sup_distance",
]


@dataclass(frozen=True)
class TheoryParams:
    """Window and tolerance configuration for theory computations."""

    m: int
    max_k: int | None = None
    tail_epsilon: float = 1e-10
    mode: str = DIRECTED

    def __post_init__(self) -> None:
        if self.m < 1:
            raise InvalidParameterError(f"m must be >= 1, got {self.m}")
        if self.max_k is not None and self.max_k <= self.m:
            raise InvalidParameterError("max_k must exceed m")
        _check_mode(self.mode)


def _nonzero_entries(probs: np.ndarray, min_k: int) -> dict[tuple[int, int], float]:
    idx = np.argwhere(probs != 0.0)
    return {
        (min_k + int(i), min_k + int(j)): float(probs[i, j]) for i, j in idx
    }


class EdgeStateDistribution:
    """Time-indexed probability over edge states (k1, k2).

    ``L`` is the edge count after the upcoming step, so the network currently
    described has ``L - m`` edges and ``N`` nodes.  Directed mode stores the
    full matrix; undirected mode stores unordered states with k1 <= k2 in the
    upper triangle.  ``probs[i, j]`` holds the state (m + i, m + j).
    """

    __slots__ = ("mode", "m", "t", "L", "N", "probs", "tail_mass")

    def __init__(
        self,
        mode: str,
        m: int,
        t: int,
        L: int,
        N: int,
        probs: np.ndarray,
        tail_mass: float = 0.0,
    ):
        self.mode = _check_mode(mode)
        self.m = m
        self.t = t
        self.L = L
        self.N = N
        self.probs = probs
        self.tail_mass = tail_mass

    @property
    def min_k(self) -> int:
        return self.m

    @property
    def max_k(self) -> int:
        return self.m + self.probs.shape[0] - 1

    @property
    def edge_count(self) -> int:
        return self.L - self.m

    @property
    def entries(self) -> dict[tuple[int, int], float]:
        return _nonzero_entries(self.probs, self.m)

    def total(self) -> float:
        return math.fsum(self.probs.ravel().tolist()) + self.tail_mass


class StationaryGrid:
    """Truncated fixed-point degree-correlation matrix for one (m, mode)."""

    __slots__ = ("mode", "m", "probs", "tail_mass")

    def __init__(self, mode: str, m: int, probs: np.ndarray, tail_mass: float):
        self.mode = _check_mode(mode)
        self.m = m
        self.probs = probs
        self.tail_mass = tail_mass

    @property
    def min_k(self) -> int:
        return self.m

    @property
    def max_k(self) -> int:
        return self.m + self.probs.shape[0] - 1

    @property
    def entries(self) -> dict[tuple[int, int], float]:
        return _nonzero_entries(self.probs, self.m)

    def total(self) -> float:
        return math.fsum(self.probs.ravel().tolist()) + self.tail_mass


@dataclass
class GFRow:
    """One row of the stationary correlation, as power-series coefficients."""

    row_index: int
    m: int
    coefficients: dict[int, float]

    def coefficient(self, k: int) -> float:
        return self.coefficients.get(k, 0.0)

    def value_at_one(self) -> float:
        return math.fsum(self.coefficients.values())


def exponential_degree_dist(m: int, k: int) -> float:
    """Stationary degree law of the pure-growth model: geometric above m."""
    if m < 1:
        raise InvalidParameterError(f"m must be >= 1, got {m}")
    if k < m:
        raise InvalidParameterError(f"degrees below m never occur (k={k}, m={m})")
    return (1.0 / (m + 1)) * (m / (m + 1)) ** (k - m)


def _kernel_coeffs(L: int, N: int, m: int) -> tuple[float, float, float, float]:
    """Per-edge transition coefficients for one step at edge count L-m.

    The binomial ratios C(N-2, m-j)/C(N, m) reduce to the closed products
    below; their weighted sum telescopes to N(N-1) exactly, so the kernel is
    row-stochastic up to float rounding.  The m=1 both-endpoint term is zero,
    matching a binomial with negative lower index.
    """
    if m < 1:
        raise InvalidParameterError(f"m must be >= 1, got {m}")
    if N < max(m, 2):
        raise InvalidParameterError(f"need N >= max(m, 2), got N={N}, m={m}")
    if L <= m:
        raise InvalidParameterError(f"need L > m, got L={L}, m={m}")
    frac = (L - m) / L
    denom = N * (N - 1)
    c_stay = frac * ((N - m) * (N - m - 1)) / denom
    c_single = frac * (m * (N - m)) / denom
    c_both = frac * (m * (m - 1)) / denom
    return c_stay, c_single, c_both, m / L


def one_step_transition_directed(
    state: tuple[int, int],
    L: int,
    N: int,
    m: int,
    node_counts: dict[int, float],
) -> tuple[dict[tuple[int, int], float], float]:
    """Successor-state weights of one edge over one step.

    Non-isolated outcomes keep the edge and bump neither, one, or both
    endpoint degrees; the isolated branch carries total weight m/L and lands
    on states (m, k') with weight proportional to ``node_counts[k'-1] / N``.
    Returns (successor weights, isolated-branch weight).
    """
    k1, k2 = state
    if k1 < 1 or k2 < 1:
        raise InvalidParameterError(f"degrees must be >= 1, got {state}")
    c_stay, c_single, c_both, iso_total = _kernel_coeffs(L, N, m)
    succ: dict[tuple[int, int], float] = {}

    def add(key: tuple[int, int], w: float) -> None:
        if w != 0.0:
            succ[key] = succ.get(key, 0.0) + w

    add((k1, k2), c_stay)
    add((k1 + 1, k2), c_single)
    add((k1, k2 + 1), c_single)
    add((k1 + 1, k2 + 1), c_both)
    for j, count in node_counts.items():
        add((m, j + 1), iso_total * count / N)
    return succ, iso_total


def transient_start(m: int, n0: int, max_k: int, mode: str) -> EdgeStateDistribution:
    """Point mass at the seed clique's diagonal state (n0-1, n0-1)."""
    _check_mode(mode)
    if n0 < m + 1:
        raise InvalidParameterError(f"need n0 >= m+1, got n0={n0}, m={m}")
    if max_k < n0 - 1:
        raise InvalidParameterError(f"max_k={max_k} cannot hold the start state {n0 - 1}")
    K = max_k - m + 1
    probs = np.zeros((K, K), dtype=np.float64)
    i0 = (n0 - 1) - m
    probs[i0, i0] = 1.0
    return EdgeStateDistribution(
        mode=mode, m=m, t=0, L=n0 * (n0 - 1) // 2 + m, N=n0, probs=probs
    )


def _node_count_vector(probs: np.ndarray, m: int, edges: float) -> np.ndarray:
    """Expected N_k for k = m..max_k via endpoint counting.

    Works for both representations: row+column sums double-count the ordered
    diagonal, and for upper-triangle storage they hit off-diagonal entries
    once from each side while the diagonal again lands twice.
    """
    e = probs.sum(axis=1) + probs.sum(axis=0)
    degrees = np.arange(m, m + probs.shape[0], dtype=np.float64)
    return edges * e / degrees


def _validate_step_input(dist: EdgeStateDistribution, m: int, mode: str) -> None:
    if dist.mode != mode:
        raise InvalidStateError(f"expected a {mode} distribution, got {dist.mode}")
    if m != dist.m:
        raise InvalidParameterError(f"m mismatch: step m={m}, distribution m={dist.m}")
    total = float(dist.probs.sum()) + dist.tail_mass
    if abs(total - 1.0) > 1e-9:
        raise InvalidStateError(f"distribution is not normalized (total={total!r})")


def _shift_directed(
    P: np.ndarray, c_stay: float, c_single: float, c_both: float
) -> tuple[np.ndarray, float]:
    """Non-isolated part of one step on a full matrix; returns (new, lost)."""
    new = c_stay * P
    new[1:, :] += c_single * P[:-1, :]
    new[:, 1:] += c_single * P[:, :-1]
    if c_both != 0.0:
        new[1:, 1:] += c_both * P[:-1, :-1]
    row_last = float(P[-1, :].sum())
    col_last = float(P[:, -1].sum())
    corner = float(P[-1, -1])
    lost = c_single * (row_last + col_last) + c_both * (row_last + col_last - corner)
    return new, lost


def _shift_undirected(
    U: np.ndarray, c_stay: float, c_single: float, c_both: float
) -> tuple[np.ndarray, float]:
    """Non-isolated part of one step on upper-triangle storage.

    Blind shifts place the diagonal's lower-endpoint spawn one cell below the
    diagonal; folding that band back onto the upper triangle realizes the
    factor-2 flow from each diagonal state to its adjacent off-diagonal, while
    every diagonal receives its single-coefficient inflow from (k-1, k).
    """
    K = U.shape[0]
    new = c_stay * U
    new[1:, :] += c_single * U[:-1, :]
    new[:, 1:] += c_single * U[:, :-1]
    if c_both != 0.0:
        new[1:, 1:] += c_both * U[:-1, :-1]
    # The only sub-diagonal writes are the diagonal states' lower-endpoint
    # spawns at (j+1, j); move them to their unordered spelling (j, j+1).
    idx = np.arange(K - 1)
    band = new[idx + 1, idx].copy()
    new[idx + 1, idx] = 0.0
    new[idx, idx + 1] += band
    col_last = float(U[:, -1].sum())
    corner = float(U[-1, -1])
    lost = c_single * (col_last + corner) + c_both * col_last
    return new, lost


def _apply_step(
    probs: np.ndarray,
    tail: float,
    mode: str,
    m: int,
    coeffs: tuple[float, float, float, float],
    node_counts: np.ndarray,
    iso_denom: float,
) -> tuple[np.ndarray, float]:
    c_stay, c_single, c_both, iso_total = coeffs
    total = float(probs.sum()) + tail
    if mode == DIRECTED:
        new, lost = _shift_directed(probs, c_stay, c_single, c_both)
    else:
        new, lost = _shift_undirected(probs, c_stay, c_single, c_both)
    iso_budget = iso_total * total
    iso_in = (iso_budget / iso_denom) * node_counts[:-1]
    new[0, 1:] += iso_in
    iso_lost = iso_budget - float(iso_in.sum())
    frac = c_stay + 2.0 * c_single + c_both
    new_tail = tail * frac + lost + max(iso_lost, 0.0)
    return new, new_tail


def _transient_step(dist: EdgeStateDistribution, m: int, mode: str) -> EdgeStateDistribution:
    _validate_step_input(dist, m, mode)
    coeffs = _kernel_coeffs(dist.L, dist.N, m)
    nk = _node_count_vector(dist.probs, m, dist.L - dist.m)
    new, new_tail = _apply_step(
        dist.probs, dist.tail_mass, dist.mode, m, coeffs, nk, iso_denom=float(dist.N)
    )
    return EdgeStateDistribution(
        mode=dist.mode,
        m=m,
        t=dist.t + 1,
        L=dist.L + m,
        N=dist.N + 1,
        probs=new,
        tail_mass=new_tail,
    )


def transient_step_directed(dist: EdgeStateDistribution, m: int) -> EdgeStateDistribution:
    """One exact step of the directed edge-state chain."""
    return _transient_step(dist, m, DIRECTED)


def transient_step_undirected(dist: EdgeStateDistribution, m: int) -> EdgeStateDistribution:
    """One exact step of the unordered edge-state chain.

    This is the orientation merge of the directed step: a diagonal state
    feeds its adjacent off-diagonal with twice the single-endpoint
    coefficient (either endpoint may be hit), and each diagonal receives the
    single coefficient once from the state just below it.
    """
    return _transient_step(dist, m, UNDIRECTED)


def transient_run(
    m: int,
    n0: int,
    steps: int,
    max_k: int,
    mode: str,
    snapshot_steps: tuple[int, ...] = (),
) -> tuple[EdgeStateDistribution, dict[int, EdgeStateDistribution]]:
    """Iterate the chain ``steps`` times from the clique start.

    Returns the final distribution and any requested intermediate snapshots
    (keyed by t).
    """
    if steps < 0:
        raise InvalidParameterError("steps must be >= 0")
    dist = transient_start(m, n0, max_k, mode)
    step = transient_step_directed if mode == DIRECTED else transient_step_undirected
    wanted = set(snapshot_steps)
    snaps: dict[int, EdgeStateDistribution] = {}
    if 0 in wanted:
        snaps[0] = dist
    for t in range(1, steps + 1):
        dist = step(dist, m)
        if t in wanted:
            snaps[t] = dist
    return dist, snaps


def _exponential_vector(m: int, max_k: int) -> np.ndarray:
    j = np.arange(0, max_k - m + 1, dtype=np.float64)
    return (1.0 / (m + 1)) * (m / (m + 1)) ** j


def stationary_directed(m: int, max_k: int) -> StationaryGrid:
    """Fixed point of the directed chain, by row-major recursion.

    Row m is driven by the degree law; column m is identically zero (new
    edges always enter at creator degree m and target degree above m); the
    interior averages the two predecessor states with weight m/(2m+1).
    """
    if m < 1:
        raise InvalidParameterError(f"m must be >= 1, got {m}")
    if max_k <= m + 1:
        raise InvalidParameterError(f"max_k must exceed m+1, got {max_k}")
    K = max_k - m + 1
    mu = m / (2 * m + 1)
    nu = 1.0 / (2 * m + 1)
    pk = _exponential_vector(m, max_k)
    P = np.zeros((K, K), dtype=np.float64)
    for j in range(1, K):
        P[0, j] = mu * P[0, j - 1] + nu * pk[j - 1]
    for i in range(1, K):
        P[i, 0] = mu * P[i - 1, 0]
        for j in range(1, K):
            P[i, j] = mu * (P[i - 1, j] + P[i, j - 1])
    tail = 1.0 - math.fsum(P.ravel().tolist())
    return StationaryGrid(DIRECTED, m, P, tail)


def stationary_undirected(m: int, max_k: int) -> StationaryGrid:
    """Fixed point of the unordered chain, upper-triangle storage.

    Same row m as the directed case; the diagonal is fed only from the state
    just above it, and the first off-diagonal takes the diagonal predecessor
    with doubled weight (either endpoint of a same-degree edge may be hit).
    """
    if m < 1:
        raise InvalidParameterError(f"m must be >= 1, got {m}")
    if max_k <= m + 1:
        raise InvalidParameterError(f"max_k must exceed m+1, got {max_k}")
    K = max_k - m + 1
    mu = m / (2 * m + 1)
    nu = 1.0 / (2 * m + 1)
    pk = _exponential_vector(m, max_k)
    U = np.zeros((K, K), dtype=np.float64)
    for j in range(1, K):
        U[0, j] = mu * U[0, j - 1] + nu * pk[j - 1]
    for i in range(1, K):
        U[i, i] = mu * U[i - 1, i]
        if i + 1 < K:
            U[i, i + 1] = mu * U[i - 1, i + 1] + 2.0 * mu * U[i, i]
        for j in range(i + 2, K):
            U[i, j] = mu * (U[i - 1, j] + U[i, j - 1])
    tail = 1.0 - math.fsum(U.ravel().tolist())
    return StationaryGrid(UNDIRECTED, m, U, tail)


def stationary_grid(
    m: int,
    mode: str,
    max_k: int | None = None,
    tail_epsilon: float = 1e-10,
) -> StationaryGrid:
    """Stationary grid at a fixed window, or grown until the tail is small."""
    _check_mode(mode)
    build = stationary_directed if mode == DIRECTED else stationary_undirected
    if max_k is not None:
        return build(m, max_k)
    k = max(64, 4 * m)
    while True:
        grid = build(m, k)
        if grid.tail_mass < tail_epsilon:
            return grid
        if k > 100_000:  # pragma: no cover - defensive
            raise InvalidStateError("window growth did not reach the tail tolerance")
        k *= 2


def fixed_point_map(grid: StationaryGrid) -> StationaryGrid:
    """One application of the chain's t -> infinity limit map.

    Coefficients are replaced by their limits: single-endpoint weight
    m/(2m+1), vanishing stay/both weights, and isolated-branch weight
    1/(2m+1) spread by the node-degree law reconstructed from the grid.
    The stationary grid is (up to truncation) a fixed point.
    """
    m = grid.m
    mu = m / (2 * m + 1)
    nu = 1.0 / (2 * m + 1)
    nk = _node_count_vector(grid.probs, m, 1.0)
    new, new_tail = _apply_step(
        grid.probs,
        grid.tail_mass,
        grid.mode,
        m,
        (0.0, mu, 0.0, nu),
        nk,
        iso_denom=float(nk.sum()),
    )
    return StationaryGrid(grid.mode, m, new, new_tail)


def _row_m_series(m: int, max_k: int) -> np.ndarray:
    """Row-m coefficients from the double sum over geometric terms.

    Terms are generated by the stable recurrence a_{i+1} = a_i (m+1)/(2m+1)
    starting from a_1 = (m/(m+1))^{j-1} / (2m+1); no large powers appear.
    """
    c = np.zeros(max_k + 1, dtype=np.float64)
    ratio = (m + 1) / (2 * m + 1)
    base = m / (m + 1)
    for k in range(m + 1, max_k + 1):
        j = k - m
        a = base ** (j - 1) / (2 * m + 1)
        s = 0.0
        for _ in range(j):
            s += a
            a *= ratio
        c[k] = s / (m + 1)
    return c


def _mul_geom(c: np.ndarray, m: int) -> np.ndarray:
    """Multiply a truncated series by m/(2m+1 - m x)."""
    mu = m / (2 * m + 1)
    h = np.zeros_like(c)
    prev = 0.0
    for k in range(len(c)):
        prev = mu * (c[k] + prev)
        h[k] = prev
    return h


def _series_to_row(series: np.ndarray, row: int, m: int) -> GFRow:
    coeffs = {k: float(series[k]) for k in range(m, len(series)) if series[k] != 0.0}
    return GFRow(row_index=row, m=m, coefficients=coeffs)


def gf_row_directed(m: int, r: int, max_k: int) -> GFRow:
    """Directed row r: row m convolved (r - m) times with the geometric factor."""
    if m < 1:
        raise InvalidParameterError(f"m must be >= 1, got {m}")
    if r < m:
        raise InvalidParameterError(f"row must be >= m, got {r}")
    if max_k <= m:
        raise InvalidParameterError("max_k must exceed m")
    c = _row_m_series(m, max_k)
    for _ in range(r - m):
        c = _mul_geom(c, m)
    return _series_to_row(c, r, m)


def _add_geom_from(series: np.ndarray, m: int, j: int, value: float) -> None:
    """Add value * (m/(2m+1-mx)) * x^j to a truncated series, in place."""
    mu = m / (2 * m + 1)
    v = mu * value
    for k in range(j, len(series)):
        series[k] += v
        v *= mu


def gf_rows_undirected(m: int, rows: int, max_k: int) -> list[GFRow]:
    """Unordered-grid rows m..m+rows-1 as full symmetric-row series.

    Each successive row is the previous one times the geometric factor, plus
    boundary corrections that re-pin the above-diagonal coefficients (which
    are mirror copies of earlier rows) and seed the next diagonal value.
    """
    if m < 1:
        raise InvalidParameterError(f"m must be >= 1, got {m}")
    if rows < 1:
        raise InvalidParameterError(f"rows must be >= 1, got {rows}")
    if max_k < m + rows:
        raise InvalidParameterError(
            f"max_k={max_k} too small for {rows} rows starting at {m}"
        )
    series: list[np.ndarray] = [_row_m_series(m, max_k)]
    for r in range(m, m + rows - 1):
        g = series[r - m]
        nxt = _mul_geom(g, m)
        for j in range(m, r + 1):
            # coefficient (j, r+1) is known from row j: mirror of the upper triangle
            nxt[j] += float(series[j - m][r + 1])
            _add_geom_from(nxt, m, j, -float(series[j - m][r]))
        diag_next = (m / (2 * m + 1)) * float(g[r + 1])
        _add_geom_from(nxt, m, r + 2, diag_next)
        series.append(nxt)
    return [_series_to_row(s, m + i, m) for i, s in enumerate(series)]


def _symmetrized_entries(grid) -> dict[tuple[int, int], float]:
    if grid.mode == DIRECTED:
        return dict(grid.entries)
    out: dict[tuple[int, int], float] = {}
    for (k1, k2), p in grid.entries.items():
        if k1 == k2:
            out[(k1, k2)] = out.get((k1, k2), 0.0) + p
        else:
            out[(k1, k2)] = out.get((k1, k2), 0.0) + p / 2.0
            out[(k2, k1)] = out.get((k2, k1), 0.0) + p / 2.0
    return out


def grid_r(grid) -> float | None:
    """Pearson coefficient of endpoint degrees implied by a grid.

    Returns None (the undefined sentinel) when either variance vanishes.
    """
    total = grid.total() if hasattr(grid, "total") else math.fsum(grid.entries.values())
    if abs(total - 1.0) > 1e-6:
        raise InvalidStateError(f"grid is not normalized within tolerance (total={total!r})")
    return _pearson_from_entries(grid.entries, grid.mode).pearson_r


def grid_knn(grid) -> dict[int, float]:
    """Edge-based conditional mean neighbor degree per endpoint degree."""
    sym = _symmetrized_entries(grid)
    weight: dict[int, float] = {}
    weighted: dict[int, float] = {}
    for (k1, k2), p in sym.items():
        weight[k1] = weight.get(k1, 0.0) + p
        weighted[k1] = weighted.get(k1, 0.0) + p * k2
    return {k: weighted[k] / weight[k] for k in sorted(weight) if weight[k] > 0.0}


def tail_mass(obj) -> float:
    """Probability mass beyond the computational window."""
    return float(obj.tail_mass)


def entries_sup_distance(a: dict[tuple[int, int], float], b: dict[tuple[int, int], float]) -> float:
    """Sup-norm distance between two entry mappings."""
    keys = set(a) | set(b)
    return max((abs(a.get(k, 0.0) - b.get(k, 0.0)) for k in keys), default=0.0)
