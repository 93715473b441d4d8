"""Stable-state readouts: cluster extraction over the compatibility graph
and degree-weighted aggregation of the final opinions into one group value.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import NotStable, OpinionProfile, RelationNetwork
from .dynamics import RunTrace, Termination, _opinion_array, distance_matrix
from .network import degrees


@dataclass(frozen=True)
class ClusterPartition:
    """Disjoint clusters covering all individuals, each cluster a connected
    component of the d < phi compatibility relation."""

    clusters: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for cluster in self.clusters:
            if not cluster:
                raise ValueError("clusters must be nonempty")
            if seen.intersection(cluster):
                raise ValueError("clusters must be disjoint")
            seen.update(cluster)

    @property
    def m(self) -> int:
        return len(self.clusters)


@dataclass(frozen=True)
class StableOutcome:
    """Terminal bundle of a stable run: step count, final state, clusters,
    and the aggregated group opinion."""

    T: int
    final_opinions: OpinionProfile
    final_network: RelationNetwork
    partition: ClusterPartition
    aggregate: float


@dataclass(frozen=True)
class TraceStats:
    """Per-run summary row for the sweep harness."""

    steps: int
    clusters: int
    aggregate: float
    spread: float


def _components(compat: np.ndarray) -> tuple[tuple[int, ...], ...]:
    n = compat.shape[0]
    seen = np.zeros(n, dtype=bool)
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        stack = [start]
        members = []
        while stack:
            v = stack.pop()
            members.append(v)
            for w in np.flatnonzero(compat[v]):
                if not seen[w]:
                    seen[w] = True
                    stack.append(int(w))
        comps.append(tuple(sorted(members)))
    return tuple(comps)


def extract_clusters(opinions, phi: float, epsilon: float | None = None) -> ClusterPartition:
    """Connected components of the d < phi compatibility graph; singletons
    count as clusters.

    Raises NotStable when the profile still has negotiable pairs: any
    distance inside [phi, epsilon) when ``epsilon`` is given, or exactly
    equal to phi when it is not (such a profile is unstable for every
    admissible epsilon).
    """
    o = _opinion_array(opinions)
    d = distance_matrix(o)
    off = ~np.eye(o.size, dtype=bool)
    if epsilon is not None:
        if ((d >= phi) & (d < epsilon) & off).any():
            raise NotStable(
                f"profile has pair distances inside [{phi}, {epsilon}); not a stable state"
            )
    elif ((d == phi) & off).any():
        raise NotStable(f"profile has a pair at distance exactly phi={phi}")
    compat = (d < phi) & off
    return ClusterPartition(_components(compat))


def aggregate(opinions, k) -> float:
    """Degree-weighted mean of the opinions, the single group output.

    Individuals with zero degree contribute nothing; if every degree is
    zero the unweighted mean is returned instead.
    """
    o = _opinion_array(opinions)
    weights = np.asarray(k)
    total = weights.sum()
    if total == 0:
        return float(np.sum(o) / o.size)
    return float(np.sum(o * weights) / total)


def stable_outcome(trace: RunTrace) -> StableOutcome:
    """Clusters and aggregate of a stably terminated trace.

    Raises NotStable for cap-hit traces; their cluster structure is not
    meaningful.
    """
    if trace.terminated is not Termination.STABLE:
        raise NotStable("trace hit the interaction cap; no stable state to analyze")
    partition = extract_clusters(
        trace.final_opinions, trace.config.phi, trace.config.epsilon
    )
    value = aggregate(trace.final_opinions, degrees(trace.final_network))
    return StableOutcome(trace.T, trace.final_opinions, trace.final_network, partition, value)


def trace_stats(trace: RunTrace) -> TraceStats:
    """Bundle step count, cluster count, aggregate, and final opinion spread."""
    outcome = stable_outcome(trace)
    o = outcome.final_opinions.opinions
    return TraceStats(
        steps=outcome.T,
        clusters=outcome.partition.m,
        aggregate=outcome.aggregate,
        spread=float(o.max() - o.min()),
    )
