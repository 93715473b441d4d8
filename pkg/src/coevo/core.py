"""Core value types shared by every other module: run configuration,
opinion profiles, relationship networks, and the seeded RNG-stream contract.

All types are immutable after construction (arrays are frozen), so they can
be shared freely between concurrent workers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

MAX_UINT64 = 2**64 - 1

# m = m0 = 4 for the preferential-attachment generator; also the size floor
# that config validation enforces for that topology.
SCALE_FREE_SEED_NODES = 4


class NetworkKind(enum.Enum):
    """Initial relationship topologies."""

    COMPLETE = "complete"
    SCALE_FREE = "scale-free"
    COMMUNITY = "community"


class ConfigError(ValueError):
    """A run configuration violates one of its invariants."""


class InvalidBounds(ConfigError):
    """epsilon/phi outside 0 < phi < epsilon <= 1."""


class InvalidSize(ConfigError):
    """Group size incompatible with the requested topology."""


class InvalidPersistence(ConfigError):
    """Persistence degree below 2."""


class NotStable(ValueError):
    """An operation that requires a stable profile received one with
    negotiable pairs remaining."""


class NonTermination(RuntimeError):
    """The interaction cap was hit before a stable state.

    The partial trace is attached as ``trace`` so callers can still audit
    or report the run.
    """

    def __init__(self, trace):
        super().__init__(
            f"no stable state after {trace.T} interactions (cap {trace.config.max_steps})"
        )
        self.trace = trace


@dataclass(frozen=True)
class SimConfig:
    """Every parameter of one simulation run.

    phi is the consensus bound (distances below it count as agreement),
    epsilon the confidence bound (distances at or above it block any
    interaction), p the persistence degree that caps how far an opinion
    moves in one exchange.
    """

    n: int
    epsilon: float
    phi: float
    p: int
    network_kind: NetworkKind
    seed: int
    max_steps: int = 1_000_000


def _is_int(value) -> bool:
    return isinstance(value, (int, np.integer)) and not isinstance(value, bool)


def validate_config(cfg: SimConfig) -> SimConfig:
    """Return ``cfg`` unchanged if all invariants hold, else raise the one
    matching ConfigError subclass."""
    if not isinstance(cfg.network_kind, NetworkKind):
        raise ConfigError(f"network_kind must be a NetworkKind, got {cfg.network_kind!r}")
    if not _is_int(cfg.n) or cfg.n < 2:
        raise InvalidSize(f"n must be an integer >= 2, got {cfg.n!r}")
    if cfg.network_kind is NetworkKind.COMMUNITY and (cfg.n % 2 != 0 or cfg.n < 4):
        raise InvalidSize(
            f"community topology needs an even n >= 4 (two factions of n/2), got n={cfg.n}"
        )
    if cfg.network_kind is NetworkKind.SCALE_FREE and cfg.n <= SCALE_FREE_SEED_NODES:
        raise InvalidSize(
            f"scale-free topology needs n > {SCALE_FREE_SEED_NODES}, got n={cfg.n}"
        )
    # phi = 0 is rejected: contraction never reaches exact agreement, so the
    # loop could not terminate.
    if not (0.0 < cfg.phi < cfg.epsilon <= 1.0):
        raise InvalidBounds(
            f"bounds must satisfy 0 < phi < epsilon <= 1, got phi={cfg.phi}, epsilon={cfg.epsilon}"
        )
    if not _is_int(cfg.p) or cfg.p < 2:
        raise InvalidPersistence(f"persistence degree p must be an integer >= 2, got {cfg.p!r}")
    if not _is_int(cfg.seed) or not 0 <= cfg.seed <= MAX_UINT64:
        raise ConfigError(f"seed must be an unsigned 64-bit integer, got {cfg.seed!r}")
    if not _is_int(cfg.max_steps) or cfg.max_steps < 1:
        raise ConfigError(f"max_steps must be a positive integer, got {cfg.max_steps!r}")
    return cfg


@dataclass(frozen=True)
class OpinionProfile:
    """Opinions of all individuals at one time step, each in [0, 1]."""

    opinions: np.ndarray
    t: int = 0

    def __post_init__(self):
        arr = np.array(self.opinions, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("opinions must be a nonempty 1-D vector")
        if not np.all(np.isfinite(arr)) or arr.min() < 0.0 or arr.max() > 1.0:
            raise ValueError("every opinion must lie in [0, 1]")
        if not _is_int(self.t) or self.t < 0:
            raise ValueError(f"t must be a non-negative integer, got {self.t!r}")
        arr.flags.writeable = False
        object.__setattr__(self, "opinions", arr)

    @property
    def n(self) -> int:
        return self.opinions.size


@dataclass(frozen=True)
class RelationNetwork:
    """Symmetric, loop-free boolean adjacency over n individuals."""

    adjacency: np.ndarray

    def __post_init__(self):
        adj = np.array(self.adjacency, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1] or adj.shape[0] == 0:
            raise ValueError("adjacency must be a nonempty square matrix")
        if adj.diagonal().any():
            raise ValueError("adjacency must have a zero diagonal")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency must be symmetric")
        adj.flags.writeable = False
        object.__setattr__(self, "adjacency", adj)

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]


# A stream is just a numpy Generator; the contract lives in derive_stream.
RngStream = np.random.Generator


def derive_stream(seed: int, stream_id: int) -> RngStream:
    """Deterministic PCG64 stream keyed by the (seed, stream_id) pair.

    Mixing is numpy's SeedSequence over the two integers, so the same pair
    always reproduces the same draw sequence within this implementation.
    Distinct stream ids give statistically independent streams, which is how
    sweep replicates stay order-independent.
    """
    for name, value in (("seed", seed), ("stream_id", stream_id)):
        if not _is_int(value) or not 0 <= value <= MAX_UINT64:
            raise ConfigError(f"{name} must be an unsigned 64-bit integer, got {value!r}")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, stream_id))))
