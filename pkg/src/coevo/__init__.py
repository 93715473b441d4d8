"""Co-evolving opinion and network dynamics for stability-reaching group
decisions.

Continuous opinions and the relationship network feed back on each other:
opinion distances rewire links, node degrees weight each negotiation, and
the process provably settles into a stable state whose clusters are then
aggregated into one group value. The ``experiments`` module adds a seeded
Monte-Carlo sweep harness over group size, confidence bound, persistence,
and topology.
"""

from .analysis import (
    ClusterPartition,
    StableOutcome,
    TraceStats,
    aggregate,
    extract_clusters,
    stable_outcome,
    trace_stats,
)
from .core import (
    ConfigError,
    InvalidBounds,
    InvalidPersistence,
    InvalidSize,
    NetworkKind,
    NonTermination,
    NotStable,
    OpinionProfile,
    RelationNetwork,
    RngStream,
    SimConfig,
    derive_stream,
    validate_config,
)
from .dynamics import (
    Engine,
    InteractionRecord,
    RunTrace,
    Termination,
    convergence_params,
    distance_matrix,
    is_stable,
    negotiable_set,
    recommend,
    replay,
    replay_trace,
    run,
    update_pair,
)
from .experiments import (
    CellResult,
    SweepSpec,
    clusters_sweep_spec,
    replicate_stream_id,
    run_sweep,
    steps_sweep_spec,
    summarize,
    sweep_clusters,
    sweep_steps,
)
from .network import (
    InitialCondition,
    degrees,
    gen_community,
    gen_complete,
    gen_scale_free,
    generate,
    rewire,
)

__version__ = "0.1.0"

__all__ = [
    "ClusterPartition",
    "StableOutcome",
    "TraceStats",
    "aggregate",
    "extract_clusters",
    "stable_outcome",
    "trace_stats",
    "ConfigError",
    "InvalidBounds",
    "InvalidPersistence",
    "InvalidSize",
    "NetworkKind",
    "NonTermination",
    "NotStable",
    "OpinionProfile",
    "RelationNetwork",
    "RngStream",
    "SimConfig",
    "derive_stream",
    "validate_config",
    "Engine",
    "InteractionRecord",
    "RunTrace",
    "Termination",
    "convergence_params",
    "distance_matrix",
    "is_stable",
    "negotiable_set",
    "recommend",
    "replay",
    "replay_trace",
    "run",
    "update_pair",
    "CellResult",
    "SweepSpec",
    "clusters_sweep_spec",
    "replicate_stream_id",
    "run_sweep",
    "steps_sweep_spec",
    "summarize",
    "sweep_clusters",
    "sweep_steps",
    "InitialCondition",
    "degrees",
    "gen_community",
    "gen_complete",
    "gen_scale_free",
    "generate",
    "rewire",
]
