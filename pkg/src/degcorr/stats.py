"""Empirical degree-correlation statistics.

Three views of the same network: the degree histogram, the joint probability
that a uniformly random edge joins endpoints of given degrees, and scalar /
per-degree correlation summaries (Pearson coefficient of endpoint degrees,
average neighbor degree).  Also the inverse map recovering expected node
counts per degree from an edge-state distribution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    EmptyInputError,
    IncompatibleInputsError,
    InvalidParameterError,
    InvalidStateError,
)
from .growth import Network

__all__ = [
    "DIRECTED",
    "UNDIRECTED",
    "DegreeHistogram",
    "JointDegreeMatrix",
    "Moments",
    "CorrelationSummary",
    "degree_histogram",
    "joint_degree_matrix",
    "merge_matrices",
    "pearson_r",
    "average_neighbor_degree",
    "node_counts_from_edge_dist",
]

DIRECTED = "directed"
UNDIRECTED = "undirected"
_MODES = (DIRECTED, UNDIRECTED)


def _check_mode(mode: str) -> str:
    if mode not in _MODES:
        raise InvalidParameterError(f"mode must be one of {_MODES}, got {mode!r}")
    return mode


@dataclass
class DegreeHistogram:
    """Node counts per degree.  Counts are ints for measured networks and
    floats for counts reconstructed from a distribution."""

    counts: dict[int, float]
    total_nodes: float

    def fraction(self, k: int) -> float:
        return self.counts.get(k, 0.0) / self.total_nodes


@dataclass
class JointDegreeMatrix:
    """Probability that a uniformly random edge joins degrees (k1, k2).

    Directed mode keys entries by (creator degree, target degree); undirected
    mode stores unordered pairs with k1 <= k2.  ``edge_count`` is the number
    of edges backing the estimate (summed across merged replicas).
    """

    mode: str
    m: int | None
    entries: dict[tuple[int, int], float]
    edge_count: float
    replicas_merged: int = 1

    def __post_init__(self) -> None:
        _check_mode(self.mode)
        if self.mode == UNDIRECTED:
            for k1, k2 in self.entries:
                if k1 > k2:
                    raise InvalidStateError(
                        f"undirected entries must have k1 <= k2, got ({k1},{k2})"
                    )

    def total(self) -> float:
        return math.fsum(self.entries.values())


@dataclass(frozen=True)
class Moments:
    """First and second moments over the ordered endpoint-degree ensemble."""

    e_ki: float
    e_kj: float
    e_kikj: float
    e_ki2: float
    e_kj2: float


@dataclass
class CorrelationSummary:
    """Pearson coefficient of endpoint degrees plus supporting moments.

    ``pearson_r`` is None when either endpoint-degree variance is zero
    (regular graphs are legitimate inputs, not errors).
    """

    pearson_r: float | None
    moments: Moments | None
    knn: dict[int, float] = field(default_factory=dict)


def degree_histogram(net: Network) -> DegreeHistogram:
    counts: dict[int, int] = {}
    for d in net.degrees:
        counts[d] = counts.get(d, 0) + 1
    return DegreeHistogram(counts=counts, total_nodes=net.node_count)


def joint_degree_matrix(net: Network, mode: str) -> JointDegreeMatrix:
    """Per-edge joint degree counts, normalized by the edge count.

    Directed: each edge contributes once at (deg(creator), deg(target)).
    Undirected: once at (min, max) of its endpoint degrees.
    """
    _check_mode(mode)
    if net.edge_count == 0:
        raise EmptyInputError("network has no edges")
    deg = net.degree_array()
    kc = deg[np.asarray(net.creators, dtype=np.int64)]
    kt = deg[np.asarray(net.targets, dtype=np.int64)]
    if mode == UNDIRECTED:
        kc, kt = np.minimum(kc, kt), np.maximum(kc, kt)
    pairs, counts = np.unique(np.stack([kc, kt], axis=1), axis=0, return_counts=True)
    L = net.edge_count
    entries = {
        (int(k1), int(k2)): int(c) / L for (k1, k2), c in zip(pairs.tolist(), counts.tolist())
    }
    m = net.meta.m if net.meta is not None else None
    return JointDegreeMatrix(mode=mode, m=m, entries=entries, edge_count=L)


def merge_matrices(ms: list[JointDegreeMatrix]) -> JointDegreeMatrix:
    """Edge-count-weighted average of matrices with identical mode and m.

    The reduction is a left fold in the given order; callers pass matrices in
    replica-index order to make merged results reproducible.
    """
    if not ms:
        raise EmptyInputError("nothing to merge")
    first = ms[0]
    for other in ms[1:]:
        if other.mode != first.mode or other.m != first.m:
            raise IncompatibleInputsError(
                f"cannot merge ({other.mode}, m={other.m}) into ({first.mode}, m={first.m})"
            )
    total_edges = 0.0
    acc: dict[tuple[int, int], float] = {}
    for mat in ms:
        for key, p in mat.entries.items():
            acc[key] = acc.get(key, 0.0) + p * mat.edge_count
        total_edges += mat.edge_count
    entries = {key: val / total_edges for key, val in sorted(acc.items())}
    return JointDegreeMatrix(
        mode=first.mode,
        m=first.m,
        entries=entries,
        edge_count=total_edges,
        replicas_merged=sum(mat.replicas_merged for mat in ms),
    )


def _ordered_items(entries: dict[tuple[int, int], float], mode: str):
    """Entries over the ordered-pair ensemble.

    Undirected input is symmetrized: each off-diagonal unordered entry is
    split equally between its two orientations.
    """
    if mode == DIRECTED:
        yield from entries.items()
        return
    for (k1, k2), p in entries.items():
        if k1 == k2:
            yield (k1, k2), p
        else:
            yield (k1, k2), p / 2.0
            yield (k2, k1), p / 2.0


def _pearson_from_entries(
    entries: dict[tuple[int, int], float], mode: str
) -> CorrelationSummary:
    ki_terms, kj_terms, kikj, ki2, kj2 = [], [], [], [], []
    for (k1, k2), p in _ordered_items(entries, mode):
        ki_terms.append(p * k1)
        kj_terms.append(p * k2)
        kikj.append(p * k1 * k2)
        ki2.append(p * k1 * k1)
        kj2.append(p * k2 * k2)
    mom = Moments(
        e_ki=math.fsum(ki_terms),
        e_kj=math.fsum(kj_terms),
        e_kikj=math.fsum(kikj),
        e_ki2=math.fsum(ki2),
        e_kj2=math.fsum(kj2),
    )
    var_i = mom.e_ki2 - mom.e_ki**2
    var_j = mom.e_kj2 - mom.e_kj**2
    if var_i <= 0.0 or var_j <= 0.0:
        return CorrelationSummary(pearson_r=None, moments=mom)
    r = (mom.e_kikj - mom.e_ki * mom.e_kj) / math.sqrt(var_i * var_j)
    return CorrelationSummary(pearson_r=r, moments=mom)


def pearson_r(mat: JointDegreeMatrix) -> CorrelationSummary:
    """Pearson correlation of endpoint degrees over the edge ensemble.

    Directed matrices use (creator, target) ordered pairs once each;
    undirected matrices use both orientations of every edge.
    """
    if abs(mat.total() - 1.0) > 1e-9:
        raise InvalidStateError(f"matrix is not normalized (sum={mat.total()!r})")
    return _pearson_from_entries(mat.entries, mat.mode)


def average_neighbor_degree(net: Network) -> dict[int, float]:
    """Average neighbor degree per degree class.

    For each node the mean degree of its neighbors is taken first; the value
    reported for degree k is the average of those per-node means over the
    nodes of degree k.  Degrees with no nodes are absent.
    """
    deg = net.degree_array()
    if net.edge_count == 0:
        return {}
    c = np.asarray(net.creators, dtype=np.int64)
    t = np.asarray(net.targets, dtype=np.int64)
    nbr_sum = np.zeros(net.node_count, dtype=np.float64)
    np.add.at(nbr_sum, c, deg[t].astype(np.float64))
    np.add.at(nbr_sum, t, deg[c].astype(np.float64))
    knn: dict[int, float] = {}
    counts: dict[int, int] = {}
    for i in range(net.node_count):
        k = int(deg[i])
        if k == 0:
            continue
        knn[k] = knn.get(k, 0.0) + nbr_sum[i] / k
        counts[k] = counts.get(k, 0) + 1
    return {k: knn[k] / counts[k] for k in sorted(knn)}


def _resolve_edge_total(dist, edge_count: float | None) -> float:
    if edge_count is not None:
        return float(edge_count)
    ec = getattr(dist, "edge_count", None)
    if ec is not None:
        return float(ec)
    L = getattr(dist, "L", None)
    m = getattr(dist, "m", None)
    if L is not None and m is not None:
        return float(L - m)
    return 1.0


def node_counts_from_edge_dist(dist, edge_count: float | None = None) -> DegreeHistogram:
    """Expected node counts per degree, from an edge-state distribution.

    Each degree-k node is an endpoint of exactly k edges, so counting edge
    endpoints and dividing by k recovers N_k.  For directed entries that is
    row sum plus column sum; for unordered entries the diagonal counts twice
    (both endpoints share the degree).  ``edge_count`` defaults to the number
    of edges the distribution describes.
    """
    entries = dist.entries
    mode = _check_mode(dist.mode)
    total_edges = _resolve_edge_total(dist, edge_count)
    endpoint: dict[int, float] = {}
    # Adding p under both keys makes diagonal entries count twice (two
    # same-degree endpoints) and gives row + column sums for directed input.
    for (k1, k2), p in entries.items():
        if k1 == 0 or k2 == 0:
            raise InvalidStateError("edge endpoints of degree 0 are impossible")
        endpoint[k1] = endpoint.get(k1, 0.0) + p
        endpoint[k2] = endpoint.get(k2, 0.0) + p
    counts = {k: total_edges * v / k for k, v in sorted(endpoint.items())}
    return DegreeHistogram(counts=counts, total_nodes=math.fsum(counts.values()))
