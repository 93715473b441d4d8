"""Command-line front end: run one traced simulation or a parameter sweep,
and serialize traces (CSV or JSON) and sweep tables (CSV).

Exit codes: 0 on success, 2 on usage or configuration errors, 3 when a run
hits its interaction cap (the partial trace is still written). Individual
indices are 1-based in all output; trace reals are printed with 17
significant digits so a written trace replays bit-exactly.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .analysis import stable_outcome
from .core import ConfigError, NetworkKind, NonTermination, SimConfig, validate_config
from .dynamics import InteractionRecord, RunTrace, Termination, run
from .experiments import (
    CellResult,
    SweepSpec,
    clusters_sweep_spec,
    run_sweep,
    steps_sweep_spec,
    summarize,
)

OUTPUT_DIR_ENV = "COEVO_OUTPUT_DIR"

TRACE_HEADER = "t,i,j,d_before,k_i,k_j,alpha_i,alpha_j,o_i_after,o_j_after"
STEPS_HEADER = "network,n,p,epsilon,phi,replicates,mean_steps,std_steps,cap_hits"
CLUSTERS_HEADER = "network,n,epsilon,phi,p,replicates,mean_clusters,std_clusters,cap_hits"

_KINDS = {kind.value: kind for kind in NetworkKind}


def _g17(x: float) -> str:
    return format(float(x), ".17g")


def trace_csv_lines(trace: RunTrace):
    """Trace rows under the documented header, one per interaction."""
    yield TRACE_HEADER
    for r in trace.records:
        yield ",".join(
            (
                str(r.t),
                str(r.i + 1),
                str(r.j + 1),
                _g17(r.d_before),
                str(r.k_i),
                str(r.k_j),
                _g17(r.alpha_i),
                _g17(r.alpha_j),
                _g17(r.o_i_after),
                _g17(r.o_j_after),
            )
        )


def _edge_list(adjacency: np.ndarray) -> list[list[int]]:
    rows, cols = np.nonzero(np.triu(adjacency, 1))
    return [[int(i) + 1, int(j) + 1] for i, j in zip(rows, cols)]


def trace_json_obj(trace: RunTrace, stream_id: int = 0) -> dict:
    """JSON-ready dict for a trace; floats stay native so they round-trip
    bit-exactly through json."""
    cfg = trace.config
    return {
        "config": {
            "n": cfg.n,
            "epsilon": cfg.epsilon,
            "phi": cfg.phi,
            "p": cfg.p,
            "network": cfg.network_kind.value,
            "seed": cfg.seed,
            "max_steps": cfg.max_steps,
            "stream_id": stream_id,
        },
        "terminated": trace.terminated.value,
        "T": trace.T,
        "initial": {
            "opinions": trace.initial.opinions.opinions.tolist(),
            "edges": _edge_list(trace.initial.network.adjacency),
        },
        "records": [
            {
                "t": r.t,
                "i": r.i + 1,
                "j": r.j + 1,
                "d_before": r.d_before,
                "k_i": r.k_i,
                "k_j": r.k_j,
                "alpha_i": r.alpha_i,
                "alpha_j": r.alpha_j,
                "o_i_after": r.o_i_after,
                "o_j_after": r.o_j_after,
            }
            for r in trace.records
        ],
        "final": {
            "opinions": trace.final_opinions.opinions.tolist(),
            "edges": _edge_list(trace.final_network.adjacency),
        },
    }


def load_trace_json(fp) -> dict:
    """Load a JSON trace back into replayable form.

    Returns a dict with the parsed ``config`` (SimConfig), 0-based
    ``records`` (InteractionRecord), and ``initial_opinions`` /
    ``final_opinions`` arrays.
    """
    obj = json.load(fp)
    cfg = obj["config"]
    records = tuple(
        InteractionRecord(
            t=r["t"],
            i=r["i"] - 1,
            j=r["j"] - 1,
            d_before=r["d_before"],
            k_i=r["k_i"],
            k_j=r["k_j"],
            alpha_i=r["alpha_i"],
            alpha_j=r["alpha_j"],
            o_i_after=r["o_i_after"],
            o_j_after=r["o_j_after"],
        )
        for r in obj["records"]
    )
    return {
        "config": SimConfig(
            n=cfg["n"],
            epsilon=cfg["epsilon"],
            phi=cfg["phi"],
            p=cfg["p"],
            network_kind=_KINDS[cfg["network"]],
            seed=cfg["seed"],
            max_steps=cfg["max_steps"],
        ),
        "stream_id": cfg.get("stream_id", 0),
        "terminated": obj["terminated"],
        "T": obj["T"],
        "initial_opinions": np.array(obj["initial"]["opinions"]),
        "final_opinions": np.array(obj["final"]["opinions"]),
        "records": records,
    }


def steps_table_lines(results: list[CellResult]):
    yield STEPS_HEADER
    for r in summarize(results):
        yield ",".join(
            (
                r.network_kind.value,
                str(r.n),
                str(r.p),
                repr(float(r.epsilon)),
                repr(float(r.phi)),
                str(r.replicates),
                repr(float(r.mean_steps)),
                repr(float(r.std_steps)),
                str(r.cap_hits),
            )
        )


def clusters_table_lines(results: list[CellResult]):
    yield CLUSTERS_HEADER
    for r in summarize(results):
        yield ",".join(
            (
                r.network_kind.value,
                str(r.n),
                repr(float(r.epsilon)),
                repr(float(r.phi)),
                str(r.p),
                str(r.replicates),
                repr(float(r.mean_clusters)),
                repr(float(r.std_clusters)),
                str(r.cap_hits),
            )
        )


def _resolve_output(path: str | None):
    if path is None:
        return None
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _write_lines(lines, path: str | None):
    if path is None:
        for line in lines:
            print(line)
        return
    with open(path, "w") as fh:
        for line in lines:
            fh.write(line + "\n")


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(","))


def _float_list(text: str) -> tuple[float, ...]:
    return tuple(float(part) for part in text.split(","))


def _kind_list(text: str) -> tuple[NetworkKind, ...]:
    kinds = []
    for part in text.split(","):
        if part not in _KINDS:
            raise argparse.ArgumentTypeError(
                f"unknown network {part!r} (choose from {', '.join(_KINDS)})"
            )
        kinds.append(_KINDS[part])
    return tuple(kinds)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coevo",
        description="Co-evolving opinion and network dynamics simulator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one traced simulation")
    p_run.add_argument("--network", choices=sorted(_KINDS), default="complete")
    p_run.add_argument("--n", type=int, default=10, help="group size")
    p_run.add_argument("--epsilon", type=float, default=0.5, help="bound of confidence")
    p_run.add_argument("--phi", type=float, default=0.1, help="bound of consensus")
    p_run.add_argument("--p", type=int, default=2, help="persistence degree")
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--stream-id", type=int, default=0, help="replicate stream id")
    p_run.add_argument("--max-steps", type=int, default=1_000_000)
    p_run.add_argument("--format", choices=("csv", "json"), default="csv")
    p_run.add_argument(
        "--output",
        help=f"trace file (default stdout; relative paths resolve under ${OUTPUT_DIR_ENV})",
    )

    p_sweep = sub.add_parser("sweep", help="run a replicate sweep and emit its table")
    p_sweep.add_argument("study", choices=("steps", "clusters"))
    p_sweep.add_argument("--desk-scale", action="store_true", help="reduced grid for quick runs")
    p_sweep.add_argument("--seed", type=int, default=0, help="base seed for every replicate stream")
    p_sweep.add_argument("--networks", type=_kind_list, help="comma list, e.g. complete,community")
    p_sweep.add_argument("--n", type=_int_list, help="comma list of group sizes")
    p_sweep.add_argument("--p", type=_int_list, help="comma list of persistence degrees")
    p_sweep.add_argument("--epsilon", type=_float_list, help="comma list of confidence bounds")
    p_sweep.add_argument("--phi", type=_float_list, help="comma list of consensus bounds")
    p_sweep.add_argument("--replicates", type=int, help="replicates per cell")
    p_sweep.add_argument("--jobs", type=int, default=1, help="parallel workers (-1 = all cores)")
    p_sweep.add_argument(
        "--output",
        help=f"table file (default stdout; relative paths resolve under ${OUTPUT_DIR_ENV})",
    )
    return parser


def _cmd_run(args) -> int:
    cfg = SimConfig(
        n=args.n,
        epsilon=args.epsilon,
        phi=args.phi,
        p=args.p,
        network_kind=_KINDS[args.network],
        seed=args.seed,
        max_steps=args.max_steps,
    )
    validate_config(cfg)
    code = 0
    try:
        trace = run(cfg, stream_id=args.stream_id)
    except NonTermination as exc:
        trace = exc.trace
        code = 3
    if args.format == "json":
        payload = json.dumps(trace_json_obj(trace, stream_id=args.stream_id), indent=2)
        _write_lines([payload], _resolve_output(args.output))
    else:
        _write_lines(trace_csv_lines(trace), _resolve_output(args.output))
    if trace.terminated is Termination.STABLE:
        outcome = stable_outcome(trace)
        print(
            f"stable T={trace.T} m={outcome.partition.m} aggregate={_g17(outcome.aggregate)}",
            file=sys.stderr,
        )
    else:
        print(f"cap-hit T={trace.T} (no stable state reached)", file=sys.stderr)
    return code


def _sweep_spec(args) -> SweepSpec:
    base = (
        steps_sweep_spec(args.seed, args.desk_scale)
        if args.study == "steps"
        else clusters_sweep_spec(args.seed, args.desk_scale)
    )
    return SweepSpec(
        n_values=args.n or base.n_values,
        epsilon_values=args.epsilon or base.epsilon_values,
        phi_values=args.phi or base.phi_values,
        p_values=args.p or base.p_values,
        network_kinds=args.networks or base.network_kinds,
        replicates=base.replicates if args.replicates is None else args.replicates,
        base_seed=args.seed,
    )


def _cmd_sweep(args) -> int:
    spec = _sweep_spec(args)
    results = run_sweep(spec, n_jobs=args.jobs)
    lines = steps_table_lines(results) if args.study == "steps" else clusters_table_lines(results)
    _write_lines(lines, _resolve_output(args.output))
    print(f"{len(results)} cells x {spec.replicates} replicates", file=sys.stderr)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_sweep(args)
    except ConfigError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
