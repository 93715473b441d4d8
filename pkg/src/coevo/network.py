"""Initial network generators, degree bookkeeping, and the distance-driven
rewiring rule that makes the topology co-evolve with the opinions.

All generators consume their stream in a fixed order (network draws first,
then opinion draws) so one stream pins the whole initial condition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    SCALE_FREE_SEED_NODES,
    InvalidBounds,
    InvalidSize,
    NetworkKind,
    OpinionProfile,
    RelationNetwork,
    RngStream,
)

# Chance that an internal community link is moved to the other faction.
COMMUNITY_REWIRE_PROB = 0.1
COMMUNITY_MEANS = (0.25, 0.75)
COMMUNITY_STD = 0.1


@dataclass(frozen=True)
class InitialCondition:
    """A generated network together with its t = 0 opinion profile."""

    network: RelationNetwork
    opinions: OpinionProfile

    def __post_init__(self):
        if self.network.n != self.opinions.n:
            raise ValueError(
                f"network ({self.network.n}) and opinions ({self.opinions.n}) disagree on n"
            )


def gen_complete(n: int, rng: RngStream) -> InitialCondition:
    """Every pair linked; opinions i.i.d. uniform on [0, 1]."""
    if n < 2:
        raise InvalidSize(f"complete network needs n >= 2, got {n}")
    adjacency = ~np.eye(n, dtype=bool)
    return InitialCondition(RelationNetwork(adjacency), OpinionProfile(rng.random(n)))


def gen_scale_free(n: int, rng: RngStream) -> InitialCondition:
    """Preferential attachment with m = m0 = 4; opinions uniform on [0, 1].

    The four seed nodes start fully connected so the degree-proportional
    attachment probability is well defined from the first insertion. Each
    later node draws four distinct targets weighted by the degrees as they
    were at its insertion moment, redrawing on collision, which keeps the
    graph simple and the edge count at exactly 6 + 4(n - 4).
    """
    m0 = SCALE_FREE_SEED_NODES
    if n <= m0:
        raise InvalidSize(f"scale-free network needs n > {m0}, got {n}")
    adjacency = np.zeros((n, n), dtype=bool)
    adjacency[:m0, :m0] = ~np.eye(m0, dtype=bool)
    # One entry per link end; index multiplicity equals current degree.
    ends = [v for v in range(m0) for _ in range(m0 - 1)]
    for new in range(m0, n):
        targets: set[int] = set()
        while len(targets) < m0:
            targets.add(ends[rng.integers(len(ends))])
        for v in sorted(targets):
            adjacency[new, v] = adjacency[v, new] = True
            ends.append(v)
        ends.extend([new] * m0)
    return InitialCondition(RelationNetwork(adjacency), OpinionProfile(rng.random(n)))


def gen_community(n: int, rng: RngStream) -> InitialCondition:
    """Two equal factions, each internally complete, then each internal link
    independently moved across with probability 0.1.

    Rewiring keeps the link's first endpoint and sends the other end to a
    uniformly chosen node of the opposite faction that is not already a
    neighbor, so the total link count is conserved and the graph stays
    simple. Opinions are normal draws centred at 0.25 (first faction) and
    0.75 (second), sd 0.1, resampled until they land in [0, 1].
    """
    if n < 4 or n % 2 != 0:
        raise InvalidSize(f"community network needs an even n >= 4, got {n}")
    half = n // 2
    adjacency = np.zeros((n, n), dtype=bool)
    adjacency[:half, :half] = ~np.eye(half, dtype=bool)
    adjacency[half:, half:] = ~np.eye(half, dtype=bool)
    blocks = (
        (0, half, np.arange(half, n)),
        (half, n, np.arange(0, half)),
    )
    for lo, hi, other in blocks:
        for u in range(lo, hi):
            for v in range(u + 1, hi):
                if rng.random() >= COMMUNITY_REWIRE_PROB:
                    continue
                free = other[~adjacency[u, other]]
                if free.size == 0:
                    continue  # u already linked to the whole other faction
                w = int(free[rng.integers(free.size)])
                adjacency[u, v] = adjacency[v, u] = False
                adjacency[u, w] = adjacency[w, u] = True
    opinions = np.empty(n)
    for mean, lo, hi in ((COMMUNITY_MEANS[0], 0, half), (COMMUNITY_MEANS[1], half, n)):
        for idx in range(lo, hi):
            x = rng.normal(mean, COMMUNITY_STD)
            while not 0.0 <= x <= 1.0:
                x = rng.normal(mean, COMMUNITY_STD)
            opinions[idx] = x
    return InitialCondition(RelationNetwork(adjacency), OpinionProfile(opinions))


_GENERATORS = {
    NetworkKind.COMPLETE: gen_complete,
    NetworkKind.SCALE_FREE: gen_scale_free,
    NetworkKind.COMMUNITY: gen_community,
}


def generate(kind: NetworkKind, n: int, rng: RngStream) -> InitialCondition:
    """Dispatch to the generator for ``kind``."""
    return _GENERATORS[kind](n, rng)


def degrees(net: RelationNetwork) -> np.ndarray:
    """Per-node neighbor counts of the network."""
    return net.adjacency.sum(axis=1)


def rewire(net: RelationNetwork, dist: np.ndarray, epsilon: float, phi: float) -> RelationNetwork:
    """Apply the distance thresholds to every pair: links are cut at
    d >= epsilon, forged at d < phi, and left alone inside [phi, epsilon).

    Idempotent for a fixed distance matrix.
    """
    if not 0.0 < phi < epsilon:
        raise InvalidBounds(f"rewire needs 0 < phi < epsilon, got phi={phi}, epsilon={epsilon}")
    d = np.asarray(dist, dtype=float)
    adjacency = net.adjacency
    if d.shape != adjacency.shape:
        raise ValueError(f"distance matrix {d.shape} does not match network {adjacency.shape}")
    updated = (d < phi) | (adjacency & (d < epsilon))
    np.fill_diagonal(updated, False)
    return RelationNetwork(updated)
