"""The co-evolution engine: opinion distances, negotiable pairs, the
max-conflict recommendation, degree-weighted pairwise updates, and the main
loop with a full audit trace.

Each round advances in a fixed order: distances, stability check, rewiring,
degrees, recommendation, one pairwise update, audit record. Exactly one pair
interacts per time step, and the stream is consumed only by tie-breaks (and
by initial-condition generation when the caller does not supply one), so a
(seed, stream_id) pair pins the entire trace bit for bit.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import (
    NonTermination,
    OpinionProfile,
    RelationNetwork,
    RngStream,
    SimConfig,
    derive_stream,
    validate_config,
)
from .network import InitialCondition, generate


def _opinion_array(opinions) -> np.ndarray:
    if isinstance(opinions, OpinionProfile):
        return opinions.opinions
    return np.asarray(opinions, dtype=float)


def distance_matrix(opinions) -> np.ndarray:
    """Pairwise opinion distances |o_i - o_j| as an n x n float matrix."""
    o = _opinion_array(opinions)
    return np.abs(o[:, None] - o[None, :])


def negotiable_set(i: int, dist: np.ndarray, epsilon: float, phi: float) -> set[int]:
    """Indices j != i with phi <= d_ij < epsilon: close enough to talk, far
    enough apart to matter. Symmetric: j in S_i iff i in S_j."""
    row = np.asarray(dist, dtype=float)[i]
    mask = (row >= phi) & (row < epsilon)
    mask[i] = False
    return set(np.flatnonzero(mask).tolist())


def is_stable(dist: np.ndarray, epsilon: float, phi: float) -> bool:
    """True iff no pair is negotiable: every off-diagonal distance is either
    below phi (agreement) or at least epsilon (stand-off)."""
    d = np.asarray(dist, dtype=float)
    band = (d >= phi) & (d < epsilon)
    np.fill_diagonal(band, False)
    return not band.any()


def _pick_max(candidates: np.ndarray, rng: RngStream) -> int:
    """Index of the largest entry; exact ties are resolved uniformly.

    The stream is consumed only when two or more entries tie, and ties are
    compared with exact float equality for reproducibility.
    """
    top = candidates.max()
    ties = np.flatnonzero(candidates == top)
    if ties.size == 1:
        return int(ties[0])
    return int(ties[rng.integers(ties.size)])


def recommend(dist: np.ndarray, epsilon: float, phi: float, rng: RngStream):
    """The most conflicting negotiable pair (i < j), or None when stable.

    Pairs are enumerated in canonical row-major (i < j) order; among exact
    distance ties one pair is chosen uniformly via ``rng``.
    """
    d = np.asarray(dist, dtype=float)
    iu = np.triu_indices(d.shape[0], 1)
    dvec = d[iu]
    candidates = np.where((dvec >= phi) & (dvec < epsilon), dvec, -1.0)
    if candidates.size == 0 or candidates.max() < 0.0:
        return None
    k = _pick_max(candidates, rng)
    return int(iu[0][k]), int(iu[1][k])


def convergence_params(k_i: int, k_j: int, p: int) -> tuple[float, float]:
    """Retention weights (alpha_i, alpha_j) from the pair's degrees.

    alpha_i = 1 - k_j / ((k_i + k_j) p): the better-connected side retains
    more of its own opinion. An isolated pair (both degrees zero)
    substitutes unit degrees; a single zero degree leaves that individual's
    alpha at exactly 1 so only the other opinion moves. The sum is always
    2 - 1/p, which is what contracts the pair's distance by 1 - 1/p.
    """
    if k_i == 0 and k_j == 0:
        k_i = k_j = 1
    denom = (k_i + k_j) * p
    return 1.0 - k_j / denom, 1.0 - k_i / denom


def update_pair(o_i: float, o_j: float, alpha_i: float, alpha_j: float) -> tuple[float, float]:
    """Move both opinions toward each other by convex combination.

    The results stay inside [min(o_i, o_j), max(o_i, o_j)], keep their
    order, and sit (alpha_i + alpha_j - 1) times the old distance apart.
    """
    return (
        alpha_i * o_i + (1.0 - alpha_i) * o_j,
        alpha_j * o_j + (1.0 - alpha_j) * o_i,
    )


@dataclass(frozen=True, slots=True)
class InteractionRecord:
    """Audit entry for one pairwise interaction."""

    t: int
    i: int
    j: int
    d_before: float
    k_i: int
    k_j: int
    alpha_i: float
    alpha_j: float
    o_i_after: float
    o_j_after: float


class Termination(enum.Enum):
    STABLE = "stable"
    CAP_HIT = "cap-hit"


@dataclass(frozen=True)
class RunTrace:
    """Everything needed to audit or replay one run."""

    config: SimConfig
    initial: InitialCondition
    records: tuple[InteractionRecord, ...]
    T: int
    terminated: Termination
    final_opinions: OpinionProfile
    final_network: RelationNetwork


class Engine:
    """Mutable simulation state advanced one recommended interaction at a
    time; ``run`` is the loop most callers want.

    The distance matrix is maintained incrementally (only the updated pair's
    rows change between rounds) and rewiring after the first full pass only
    touches those rows; both shortcuts are bit-equivalent to recomputing
    from scratch.

    The engine also watches for provable livelock. An isolated individual
    can bounce between two anchored ones forever (the anchored side keeps
    alpha = 1, so each hop recreates the distance to the other anchor), and
    in floats the state repeats bit-exactly. Whenever a one-sided
    zero-degree interaction reproduces an earlier state with no random
    draws in between, the continuation is deterministic and cyclic, so
    ``livelocked`` is set and ``run`` reports NonTermination without
    spinning to the cap.
    """

    def __init__(self, cfg: SimConfig, rng: RngStream, initial: InitialCondition):
        validate_config(cfg)
        if initial.network.n != cfg.n:
            raise ValueError(f"initial condition has n={initial.network.n}, config has n={cfg.n}")
        self.cfg = cfg
        self.rng = rng
        self.t = initial.opinions.t
        self.opinions = initial.opinions.opinions.copy()
        self.adjacency = initial.network.adjacency.copy()
        self.livelocked = False
        self._phi = float(cfg.phi)
        self._eps = float(cfg.epsilon)
        self._dist = np.abs(self.opinions[:, None] - self.opinions[None, :])
        self._iu = np.triu_indices(cfg.n, 1)
        self._rewired_once = False
        self._touched: tuple[int, int] | None = None
        self._tie_draws = 0
        self._seen_states: dict = {}

    def _band_candidates(self) -> np.ndarray:
        dvec = self._dist[self._iu]
        return np.where((dvec >= self._phi) & (dvec < self._eps), dvec, -1.0)

    def stable_now(self) -> bool:
        """True iff no negotiable pair remains."""
        candidates = self._band_candidates()
        return candidates.size == 0 or candidates.max() < 0.0

    def _rewire_full(self):
        updated = (self._dist < self._phi) | (self.adjacency & (self._dist < self._eps))
        np.fill_diagonal(updated, False)
        self.adjacency = updated

    def _rewire_rows(self, pair):
        for v in pair:
            row_d = self._dist[v]
            row = (row_d < self._phi) | (self.adjacency[v] & (row_d < self._eps))
            row[v] = False
            self.adjacency[v] = row
            self.adjacency[:, v] = row

    def _refresh_distances(self, i: int, j: int):
        o = self.opinions
        for v in (i, j):
            row = np.abs(o - o[v])
            self._dist[v, :] = row
            self._dist[:, v] = row

    def final_rewire(self):
        """Bring the network in line with the current distances everywhere;
        at a stable state this makes it exactly the phi-proximity graph."""
        self._rewire_full()
        self._rewired_once = True
        self._touched = None

    def step(self) -> InteractionRecord | None:
        """Advance one interaction; None signals an already-stable profile
        (in which case nothing, including the network, is touched)."""
        candidates = self._band_candidates()
        if candidates.size == 0 or candidates.max() < 0.0:
            return None
        # Topology reacts to the current distances before weights are read.
        if not self._rewired_once:
            self._rewire_full()
            self._rewired_once = True
        elif self._touched is not None:
            self._rewire_rows(self._touched)
        self._touched = None
        top = candidates.max()
        ties = np.flatnonzero(candidates == top)
        if ties.size == 1:
            k = int(ties[0])
        else:
            k = int(ties[self.rng.integers(ties.size)])
            self._tie_draws += 1
        i = int(self._iu[0][k])
        j = int(self._iu[1][k])
        d_before = float(self._dist[i, j])
        k_i = int(self.adjacency[i].sum())
        k_j = int(self.adjacency[j].sum())
        alpha_i, alpha_j = convergence_params(k_i, k_j, self.cfg.p)
        o_i, o_j = update_pair(
            float(self.opinions[i]), float(self.opinions[j]), alpha_i, alpha_j
        )
        self.opinions[i] = o_i
        self.opinions[j] = o_j
        self._refresh_distances(i, j)
        self._touched = (i, j)
        record = InteractionRecord(self.t, i, j, d_before, k_i, k_j, alpha_i, alpha_j, o_i, o_j)
        self.t += 1
        if (k_i == 0) != (k_j == 0):
            self._check_livelock(i, j)
        return record

    def _check_livelock(self, i: int, j: int):
        # Exact post-state recurrence with no random draws in between means
        # the continuation is deterministic and periodic.
        key = (self.opinions.tobytes(), self.adjacency.tobytes(), i, j)
        draws_then = self._seen_states.get(key)
        if draws_then == self._tie_draws:
            self.livelocked = True
            return
        if len(self._seen_states) >= 10_000:
            self._seen_states.clear()
        self._seen_states[key] = self._tie_draws


def run(cfg: SimConfig, stream_id: int = 0, initial: InitialCondition | None = None) -> RunTrace:
    """Simulate from a seeded stream until the stable state.

    ``initial`` overrides the generated starting condition (the stream then
    feeds only tie-breaks). After termination one final rewiring pass aligns
    the terminal network with the final distances, so at a stable state it
    equals the phi-proximity graph of the final opinions.

    Raises NonTermination (with the partial trace attached) if ``max_steps``
    interactions pass and negotiable pairs still remain, or as soon as the
    engine proves the run is stuck in an exact interaction cycle.
    """
    validate_config(cfg)
    rng = derive_stream(cfg.seed, stream_id)
    if initial is None:
        initial = generate(cfg.network_kind, cfg.n, rng)
    engine = Engine(cfg, rng, initial)
    records: list[InteractionRecord] = []
    terminated = Termination.STABLE
    while True:
        record = engine.step()
        if record is None:
            break
        records.append(record)
        if engine.livelocked:
            terminated = Termination.CAP_HIT
            break
        if len(records) >= cfg.max_steps:
            if not engine.stable_now():
                terminated = Termination.CAP_HIT
            break
    engine.final_rewire()
    trace = RunTrace(
        config=cfg,
        initial=initial,
        records=tuple(records),
        T=len(records),
        terminated=terminated,
        final_opinions=OpinionProfile(engine.opinions, t=engine.t),
        final_network=RelationNetwork(engine.adjacency),
    )
    if terminated is Termination.CAP_HIT:
        exc = NonTermination(trace)
        if engine.livelocked:
            exc.args = (
                f"provably cyclic after {trace.T} interactions: an exact earlier state "
                "recurred with no random draws in between",
            )
        raise exc
    return trace


def replay(initial_opinions, records) -> np.ndarray:
    """Re-apply recorded interactions to the initial profile.

    Uses the same update expression as the engine, so the result reproduces
    the recorded final opinions bit-exactly.
    """
    o = _opinion_array(initial_opinions).copy()
    for r in records:
        o[r.i], o[r.j] = update_pair(float(o[r.i]), float(o[r.j]), r.alpha_i, r.alpha_j)
    return o


def replay_trace(trace: RunTrace) -> np.ndarray:
    """Replay a full trace from its stored initial profile."""
    return replay(trace.initial.opinions, trace.records)
