"""Monte-Carlo sweep harness: seeded replicate grids over group size,
confidence bound, persistence, and topology, with per-cell statistics.

Every (cell, replicate) pair gets its own hashed stream id, so results are
independent of execution order and of how many workers run them.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np
from joblib import Parallel, delayed

from .analysis import trace_stats
from .core import NetworkKind, NonTermination, SimConfig, validate_config
from .dynamics import run

_KIND_ORDER = {kind: index for index, kind in enumerate(NetworkKind)}


@dataclass(frozen=True)
class SweepSpec:
    """A full parameter grid plus the replicate count and base seed."""

    n_values: tuple[int, ...]
    epsilon_values: tuple[float, ...]
    phi_values: tuple[float, ...]
    p_values: tuple[int, ...]
    network_kinds: tuple[NetworkKind, ...]
    replicates: int
    base_seed: int
    max_steps: int = 1_000_000

    def __post_init__(self):
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")
        for cfg in self.cells():
            validate_config(cfg)

    def cells(self) -> list[SimConfig]:
        """Grid cells in canonical (network, n, p, epsilon, phi) order."""
        kinds = sorted(set(self.network_kinds), key=_KIND_ORDER.__getitem__)
        return [
            SimConfig(
                n=n,
                epsilon=eps,
                phi=phi,
                p=p,
                network_kind=kind,
                seed=self.base_seed,
                max_steps=self.max_steps,
            )
            for kind in kinds
            for n in sorted(set(self.n_values))
            for p in sorted(set(self.p_values))
            for eps in sorted(set(self.epsilon_values))
            for phi in sorted(set(self.phi_values))
        ]


@dataclass(frozen=True)
class CellResult:
    """Replicate statistics for one grid cell.

    Means and sample standard deviations cover stable runs only; cap-hit
    runs are counted in ``cap_hits`` and never averaged in.
    """

    network_kind: NetworkKind
    n: int
    p: int
    epsilon: float
    phi: float
    replicates: int
    mean_steps: float
    std_steps: float
    mean_clusters: float
    std_clusters: float
    cap_hits: int


def replicate_stream_id(cfg: SimConfig, replicate: int) -> int:
    """Stable 64-bit stream key for one (cell, replicate) pair.

    Hashed from the cell parameters rather than from grid position, so any
    replicate can be rerun in isolation and sweeps stay order-independent.
    """
    key = (
        f"{cfg.network_kind.value}|{cfg.n}|{cfg.p}|{cfg.epsilon!r}|{cfg.phi!r}|{replicate}"
    )
    return int.from_bytes(hashlib.blake2b(key.encode(), digest_size=8).digest(), "big")


def _replicate(cfg: SimConfig, stream_id: int, on_trace=None):
    try:
        trace = run(cfg, stream_id=stream_id)
    except NonTermination:
        return math.nan, math.nan, True
    if on_trace is not None:
        on_trace(trace)
    stats = trace_stats(trace)
    return float(stats.steps), float(stats.clusters), False


def _cell_result(cfg: SimConfig, replicates: int, rows) -> CellResult:
    steps = np.array([s for s, _, cap in rows if not cap])
    clusters = np.array([c for _, c, cap in rows if not cap])
    cap_hits = sum(1 for _, _, cap in rows if cap)

    def _stats(values: np.ndarray) -> tuple[float, float]:
        if values.size == 0:
            return math.nan, math.nan
        if values.size == 1:
            return float(values[0]), 0.0
        return float(values.mean()), float(values.std(ddof=1))

    mean_steps, std_steps = _stats(steps)
    mean_clusters, std_clusters = _stats(clusters)
    return CellResult(
        network_kind=cfg.network_kind,
        n=cfg.n,
        p=cfg.p,
        epsilon=cfg.epsilon,
        phi=cfg.phi,
        replicates=replicates,
        mean_steps=mean_steps,
        std_steps=std_steps,
        mean_clusters=mean_clusters,
        std_clusters=std_clusters,
        cap_hits=cap_hits,
    )


def run_sweep(spec: SweepSpec, on_trace=None, n_jobs: int = 1) -> list[CellResult]:
    """One CellResult per grid cell, in canonical order.

    ``on_trace`` is called with every stable RunTrace (in the worker that
    produced it) and may raise to abort the sweep; it is how invariant
    checks piggyback on large runs. ``n_jobs`` follows the joblib
    convention (-1 for all cores); the output does not depend on it.
    """
    cells = spec.cells()
    tasks = [
        (index, cfg, replicate_stream_id(cfg, r))
        for index, cfg in enumerate(cells)
        for r in range(spec.replicates)
    ]
    if n_jobs == 1:
        rows = [_replicate(cfg, sid, on_trace) for _, cfg, sid in tasks]
    else:
        rows = Parallel(n_jobs=n_jobs)(
            delayed(_replicate)(cfg, sid, on_trace) for _, cfg, sid in tasks
        )
    results = []
    for index, cfg in enumerate(cells):
        cell_rows = rows[index * spec.replicates : (index + 1) * spec.replicates]
        results.append(_cell_result(cfg, spec.replicates, cell_rows))
    return results


def steps_sweep_spec(base_seed: int = 0, desk_scale: bool = False) -> SweepSpec:
    """Grid for the steps-vs-size study: n from 10 to 100, p in {2, 3, 4},
    eps 0.5, phi 0.1, all three topologies, 100 replicates per cell
    (desk scale trims the replicates to 25; the 90 cells stay)."""
    return SweepSpec(
        n_values=tuple(range(10, 101, 10)),
        epsilon_values=(0.5,),
        phi_values=(0.1,),
        p_values=(2, 3, 4),
        network_kinds=tuple(NetworkKind),
        replicates=25 if desk_scale else 100,
        base_seed=base_seed,
    )


def clusters_sweep_spec(base_seed: int = 0, desk_scale: bool = False) -> SweepSpec:
    """Grid for the clusters-vs-confidence study: eps from 0.30 to 0.50 in
    0.02 steps, p 2, phi 0.1, all three topologies, 1500 replicates per cell
    (desk scale: 100 replicates and n capped at 50)."""
    return SweepSpec(
        n_values=tuple(range(10, 51, 10)) if desk_scale else tuple(range(10, 101, 10)),
        epsilon_values=tuple(round(0.30 + 0.02 * k, 2) for k in range(11)),
        phi_values=(0.1,),
        p_values=(2,),
        network_kinds=tuple(NetworkKind),
        replicates=100 if desk_scale else 1500,
        base_seed=base_seed,
    )


def sweep_steps(spec: SweepSpec | None = None, on_trace=None, n_jobs: int = 1, **spec_kwargs) -> list[CellResult]:
    """Run the steps-vs-size study (default grid unless ``spec`` is given)."""
    if spec is None:
        spec = steps_sweep_spec(**spec_kwargs)
    return run_sweep(spec, on_trace=on_trace, n_jobs=n_jobs)


def sweep_clusters(spec: SweepSpec | None = None, on_trace=None, n_jobs: int = 1, **spec_kwargs) -> list[CellResult]:
    """Run the clusters-vs-confidence study (default grid unless ``spec`` is given)."""
    if spec is None:
        spec = clusters_sweep_spec(**spec_kwargs)
    return run_sweep(spec, on_trace=on_trace, n_jobs=n_jobs)


def summarize(results: list[CellResult]) -> list[CellResult]:
    """Results re-ordered canonically by (network, n, p, epsilon, phi) so
    emitted tables diff cleanly across runs."""
    if not results:
        raise ValueError("summarize needs at least one cell result")
    return sorted(
        results,
        key=lambda r: (_KIND_ORDER[r.network_kind], r.n, r.p, r.epsilon, r.phi),
    )
