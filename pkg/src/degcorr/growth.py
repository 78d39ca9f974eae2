"""Pure-growth network model.

A network starts as a complete graph on ``n0`` nodes.  Each time step adds
one node and joins it to ``m`` distinct existing nodes chosen uniformly at
random.  Edges remember which endpoint created them: the creator of a growth
edge is the newly added node, and clique edges are oriented so that the
creator is the endpoint with the higher node id (the "newer" node under any
labelling of the seed clique).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GridParseError, InvalidParameterError

__all__ = [
    "GrowthParams",
    "Network",
    "replica_stream",
    "init_complete",
    "grow_step",
    "grow_run",
]


@dataclass(frozen=True)
class GrowthParams:
    """Full parameterization of one growth run.

    ``seed`` and ``replica_index`` determine the random stream; two runs with
    the same parameters produce bit-identical edge lists.
    """

    m: int
    n0: int
    steps: int
    seed: int
    replica_index: int = 0

    def __post_init__(self) -> None:
        if self.m < 1:
            raise InvalidParameterError(f"m must be >= 1, got {self.m}")
        if self.steps < 0:
            raise InvalidParameterError(f"steps must be >= 0, got {self.steps}")
        if self.n0 < self.m + 1:
            raise InvalidParameterError(
                f"n0 must be >= m+1 so every new node finds m distinct targets "
                f"(got n0={self.n0}, m={self.m})"
            )
        if self.replica_index < 0:
            raise InvalidParameterError("replica_index must be >= 0")


class Network:
    """A growing simple graph with per-edge creation orientation.

    Edges are stored as parallel lists ``creators``/``targets`` of node ids;
    ``degrees[i]`` is the degree of node ``i``.  Node ids are dense integers
    in insertion order, so the creator of every edge is the endpoint added
    later in time.
    """

    __slots__ = ("degrees", "creators", "targets", "meta")

    def __init__(
        self,
        degrees: list[int],
        creators: list[int],
        targets: list[int],
        meta: GrowthParams | None = None,
    ):
        self.degrees = degrees
        self.creators = creators
        self.targets = targets
        self.meta = meta

    @property
    def node_count(self) -> int:
        return len(self.degrees)

    @property
    def edge_count(self) -> int:
        return len(self.creators)

    @property
    def edges(self) -> list[tuple[int, int]]:
        """Edge list as (creator, target) pairs, in creation order."""
        return list(zip(self.creators, self.targets))

    def degree_array(self) -> np.ndarray:
        return np.asarray(self.degrees, dtype=np.int64)

    def copy(self) -> "Network":
        return Network(list(self.degrees), list(self.creators), list(self.targets), self.meta)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Network(nodes={self.node_count}, edges={self.edge_count})"

    def to_edge_list_text(self) -> str:
        """Serialize as edge-list text with a parameter header line.

        Format: header ``# n0 m steps seed replica`` followed by one
        ``creator target`` pair per line.  Requires ``meta``.
        """
        if self.meta is None:
            raise InvalidParameterError("network has no run parameters attached")
        p = self.meta
        lines = [f"# {p.n0} {p.m} {p.steps} {p.seed} {p.replica_index}"]
        lines.extend(f"{c} {t}" for c, t in zip(self.creators, self.targets))
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_edge_list_text(text: str) -> "Network":
        """Parse the format written by :meth:`to_edge_list_text`."""
        lines = text.splitlines()
        if not lines or not lines[0].startswith("#"):
            raise GridParseError("missing '# n0 m steps seed replica' header", line=1)
        fields = lines[0][1:].split()
        if len(fields) != 5:
            raise GridParseError("header must have 5 fields", line=1)
        try:
            n0, m, steps, seed, replica = (int(f) for f in fields)
        except ValueError as exc:
            raise GridParseError(f"bad header field: {exc}", line=1) from None
        meta = GrowthParams(m=m, n0=n0, steps=steps, seed=seed, replica_index=replica)
        degrees = [0] * (n0 + steps)
        creators: list[int] = []
        targets: list[int] = []
        for ln, raw in enumerate(lines[1:], start=2):
            if not raw.strip():
                continue
            parts = raw.split()
            if len(parts) != 2:
                raise GridParseError("expected 'creator target'", line=ln)
            try:
                c, t = int(parts[0]), int(parts[1])
            except ValueError:
                raise GridParseError("edge endpoints must be integers", line=ln) from None
            if not (0 <= c < len(degrees) and 0 <= t < len(degrees)):
                raise GridParseError("edge endpoint out of range", line=ln)
            creators.append(c)
            targets.append(t)
            degrees[c] += 1
            degrees[t] += 1
        return Network(degrees, creators, targets, meta)


def replica_stream(seed: int, replica_index: int = 0) -> np.random.Generator:
    """Independent random stream for one replica.

    Uses numpy's splittable ``SeedSequence`` with ``spawn_key=(replica_index,)``
    so replicas are statistically independent and order-insensitive.
    """
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(replica_index,))
    return np.random.Generator(np.random.PCG64(ss))


def init_complete(n0: int) -> Network:
    """Complete graph on ``n0`` nodes; clique edges oriented creator = higher id."""
    if n0 < 2:
        raise InvalidParameterError(f"complete graph needs n0 >= 2, got {n0}")
    creators: list[int] = []
    targets: list[int] = []
    for i in range(n0):
        for j in range(i + 1, n0):
            creators.append(j)
            targets.append(i)
    return Network([n0 - 1] * n0, creators, targets)


def _sample_targets(n: int, m: int, uniforms: list[float]) -> list[int]:
    """Floyd's rejection-free sample of m distinct ids from range(n).

    Consumes exactly m uniforms regardless of collisions, so the random
    stream position is a pure function of (steps, m).
    """
    if m == 1:
        return [int(uniforms[0] * n)]
    chosen: set[int] = set()
    picks: list[int] = []
    for idx, j in enumerate(range(n - m, n)):
        t = int(uniforms[idx] * (j + 1))
        if t in chosen:
            t = j
        chosen.add(t)
        picks.append(t)
    return picks


def _attach_in_place(net: Network, m: int, uniforms: list[float]) -> None:
    degrees = net.degrees
    n = len(degrees)
    new = n
    for t in _sample_targets(n, m, uniforms):
        net.creators.append(new)
        net.targets.append(t)
        degrees[t] += 1
    degrees.append(m)


def grow_step(net: Network, m: int, rng: np.random.Generator) -> Network:
    """One growth step: returns a new network with one extra node and m edges.

    The m targets are distinct and uniform among existing nodes; all degrees
    other than the targets' are unchanged and the new node has degree m.
    """
    if m < 1:
        raise InvalidParameterError(f"m must be >= 1, got {m}")
    if net.node_count < m:
        raise InvalidParameterError(
            f"cannot attach {m} distinct edges to a {net.node_count}-node network"
        )
    out = net.copy()
    _attach_in_place(out, m, rng.random(m).tolist())
    return out


def grow_run(params: GrowthParams) -> Network:
    """Run ``params.steps`` growth steps from the seed clique.

    Deterministic: the random stream is ``replica_stream(seed, replica_index)``
    and exactly ``steps * m`` uniform draws are consumed.
    """
    rng = replica_stream(params.seed, params.replica_index)
    net = init_complete(params.n0)
    if params.steps:
        uniforms = rng.random(params.steps * params.m).tolist()
        m = params.m
        for s in range(params.steps):
            _attach_in_place(net, m, uniforms[s * m : (s + 1) * m])
    net.meta = params
    return net
