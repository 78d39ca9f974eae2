"""Replica ensembles of grown networks, with deterministic parallelism.

Each replica runs on its own stream derived from (seed, replica_index), so
results do not depend on how replicas are scheduled; merged outputs are a
left fold in replica-index order and are byte-stable across job counts.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .errors import InvalidParameterError
from .growth import GrowthParams, grow_run
from .stats import (
    DegreeHistogram,
    JointDegreeMatrix,
    average_neighbor_degree,
    degree_histogram,
    joint_degree_matrix,
    merge_matrices,
)

__all__ = ["EnsembleResult", "run_ensemble", "default_jobs"]


@dataclass
class EnsembleResult:
    """Merged statistics of an ensemble of independent growth runs."""

    m: int
    n0: int
    steps: int
    replicas: int
    seed: int
    matrices: dict[str, JointDegreeMatrix]
    histogram: DegreeHistogram
    knn: dict[int, float]


def default_jobs() -> int:
    """Parallelism default: DEGCORR_JOBS if set, else 1."""
    raw = os.environ.get("DEGCORR_JOBS", "")
    if not raw:
        return 1
    try:
        jobs = int(raw)
    except ValueError:
        raise InvalidParameterError(f"DEGCORR_JOBS must be an integer, got {raw!r}") from None
    if jobs < 1:
        raise InvalidParameterError("DEGCORR_JOBS must be >= 1")
    return jobs


def _replica_payload(args: tuple[int, int, int, int, int, tuple[str, ...]]):
    m, n0, steps, seed, replica, modes = args
    net = grow_run(GrowthParams(m=m, n0=n0, steps=steps, seed=seed, replica_index=replica))
    mats = {mode: joint_degree_matrix(net, mode) for mode in modes}
    hist = degree_histogram(net)
    knn = average_neighbor_degree(net)
    # per-degree sums of per-node average neighbor degree, for exact pooling
    counts = hist.counts
    knn_sums = {k: knn[k] * counts[k] for k in knn}
    return mats, hist.counts, knn_sums


def run_ensemble(
    m: int,
    n0: int,
    steps: int,
    replicas: int,
    seed: int,
    modes: tuple[str, ...] = ("directed", "undirected"),
    jobs: int = 1,
) -> EnsembleResult:
    """Run independent replicas and merge their statistics.

    ``jobs > 1`` distributes replicas over worker processes; outputs are
    identical to a serial run because merging happens in replica order.
    """
    if replicas < 1:
        raise InvalidParameterError(f"replicas must be >= 1, got {replicas}")
    if jobs < 1:
        raise InvalidParameterError(f"jobs must be >= 1, got {jobs}")
    work = [(m, n0, steps, seed, r, tuple(modes)) for r in range(replicas)]
    if jobs == 1 or replicas == 1:
        payloads = [_replica_payload(w) for w in work]
    else:
        chunk = max(1, replicas // (jobs * 4))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            payloads = list(pool.map(_replica_payload, work, chunksize=chunk))

    matrices = {
        mode: merge_matrices([p[0][mode] for p in payloads]) for mode in modes
    }
    hist_counts: dict[int, float] = {}
    total_nodes = 0.0
    knn_sums: dict[int, float] = {}
    for mats, counts, sums in payloads:
        for k, c in counts.items():
            hist_counts[k] = hist_counts.get(k, 0) + c
            total_nodes += c
        for k, s in sums.items():
            knn_sums[k] = knn_sums.get(k, 0.0) + s
    knn = {k: knn_sums[k] / hist_counts[k] for k in sorted(knn_sums)}
    histogram = DegreeHistogram(
        counts=dict(sorted(hist_counts.items())), total_nodes=total_nodes
    )
    return EnsembleResult(
        m=m,
        n0=n0,
        steps=steps,
        replicas=replicas,
        seed=seed,
        matrices=matrices,
        histogram=histogram,
        knn=knn,
    )
