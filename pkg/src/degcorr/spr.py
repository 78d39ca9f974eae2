"""Ensemble evolution by edge transfer.

Instead of growing each network independently, a whole ensemble advances one
generation at a time: within every class of networks holding ``i`` edges,
groups of ``i+1`` are formed, one member of each group is disassembled into
``i`` isolated edges, and each isolated edge is re-attached to a distinct
surviving member (the survivor gains one fresh node joined to one of its
nodes chosen uniformly).  The rule is defined for m=1 only.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameterError, InvalidStateError, UnsupportedModeError
from .growth import Network, init_complete

__all__ = ["SprEnsemble", "ensemble_stream", "spr_step", "spr_run"]


def ensemble_stream(seed: int) -> np.random.Generator:
    """The random stream driving a whole ensemble run for a given seed."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


@dataclass
class SprEnsemble:
    """Partition of an ensemble into classes by edge count.

    ``buckets[i]`` holds the networks with exactly ``i`` edges;
    ``carryover[i]`` counts networks of class ``i`` that could not form a
    full group of ``i+1`` at the previous step and were carried unchanged.
    """

    generation: int
    buckets: dict[int, list[Network]]
    carryover: dict[int, int] = field(default_factory=dict)
    m: int = 1

    @property
    def size(self) -> int:
        return sum(len(v) for v in self.buckets.values())

    def validate(self) -> None:
        for i, nets in self.buckets.items():
            for net in nets:
                if net.edge_count != i:
                    raise InvalidStateError(
                        f"bucket {i} holds a network with {net.edge_count} edges"
                    )


def _attach_fresh_node(net: Network, target: int) -> None:
    # Survivor gains one new degree-1 node joined to `target`.  The two
    # endpoints of an isolated edge are interchangeable fresh nodes, so no
    # random draw is needed to pick which one lands on the target.
    new = net.node_count
    net.creators.append(new)
    net.targets.append(target)
    net.degrees[target] += 1
    net.degrees.append(1)


def spr_step(ens: SprEnsemble, rng: np.random.Generator) -> SprEnsemble:
    """Advance the ensemble one generation.

    Per class ``i``: networks are shuffled and partitioned into groups of
    ``i+1``; in each group one uniformly chosen member is disassembled and its
    ``i`` edges feed the ``i`` survivors, each of which gains one node attached
    to one of its nodes chosen uniformly.  Outputs land in class ``i+1``;
    networks left over (class size not divisible by ``i+1``) are carried over
    unchanged and counted.
    """
    if ens.m != 1:
        raise UnsupportedModeError(f"edge-transfer rule is defined for m=1, got m={ens.m}")
    ens.validate()
    new_buckets: dict[int, list[Network]] = {}
    carryover: dict[int, int] = {}
    for i in sorted(ens.buckets):
        nets = ens.buckets[i]
        if not nets:
            continue
        group = i + 1
        order = rng.permutation(len(nets))
        n_groups, leftover = divmod(len(nets), group)
        for g in range(n_groups):
            members = [nets[order[g * group + j]] for j in range(group)]
            drop = int(rng.integers(0, group))
            # The dropped member dissolves into `i` interchangeable isolated
            # edges, one per survivor.
            for j, survivor in enumerate(members):
                if j == drop:
                    continue
                out = survivor.copy()
                target = int(rng.integers(0, out.node_count))
                _attach_fresh_node(out, target)
                new_buckets.setdefault(i + 1, []).append(out)
        if leftover:
            kept = [nets[order[n_groups * group + j]].copy() for j in range(leftover)]
            new_buckets.setdefault(i, []).extend(kept)
            carryover[i] = leftover
    return SprEnsemble(
        generation=ens.generation + 1,
        buckets=new_buckets,
        carryover=carryover,
        m=ens.m,
    )


def spr_run(
    n0: int,
    generations: int,
    ensemble_size: int,
    seed: int,
    m: int = 1,
) -> SprEnsemble:
    """Iterate :func:`spr_step` from an ensemble of identical seed cliques."""
    if m != 1:
        raise UnsupportedModeError(f"edge-transfer rule is defined for m=1, got m={m}")
    if n0 < 2:
        raise InvalidParameterError(f"n0 must be >= 2, got {n0}")
    if generations < 0:
        raise InvalidParameterError("generations must be >= 0")
    i0 = n0 * (n0 - 1) // 2
    if ensemble_size < i0 + 1:
        raise InvalidParameterError(
            f"ensemble_size must be >= {i0 + 1} to form one group of class {i0}"
        )
    rng = ensemble_stream(seed)
    seed_net = init_complete(n0)
    ens = SprEnsemble(
        generation=0,
        buckets={i0: [seed_net.copy() for _ in range(ensemble_size)]},
        m=m,
    )
    for _ in range(generations):
        ens = spr_step(ens, rng)
    return ens
