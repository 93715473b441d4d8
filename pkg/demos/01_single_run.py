"""One fully traced negotiation, from the initial network to the aggregated
group opinion.

Ten individuals start on a complete network with uniform random opinions.
Each round the most conflicting negotiable pair (opinion distance inside
[phi, epsilon)) is recommended to talk; their degrees decide who concedes
more, and the network rewires as distances change. Run it a few times with
different seeds to watch consensus or polarization emerge.
"""

import numpy as np

from coevo import NetworkKind, SimConfig, degrees, run, stable_outcome

cfg = SimConfig(
    n=10,
    epsilon=0.5,   # pairs at distance >= 0.5 refuse to interact
    phi=0.1,       # pairs closer than 0.1 already agree
    p=2,           # persistence: each talk halves the pair's distance
    network_kind=NetworkKind.COMPLETE,
    seed=7,
)

trace = run(cfg)
print(f"initial opinions: {np.round(trace.initial.opinions.opinions, 3)}")
print(f"stable after {trace.T} interactions\n")

print("t    pair      d_before  k_i k_j  alphas          after")
for r in trace.records[:8]:
    print(
        f"{r.t:<4d} ({r.i + 1},{r.j + 1})".ljust(15)
        + f"{r.d_before:.4f}    {r.k_i:<3d} {r.k_j:<4d}"
        + f"({r.alpha_i:.3f}, {r.alpha_j:.3f})  "
        + f"({r.o_i_after:.4f}, {r.o_j_after:.4f})"
    )
if trace.T > 8:
    print(f"... {trace.T - 8} more rows\n")

outcome = stable_outcome(trace)
print(f"final opinions:   {np.round(outcome.final_opinions.opinions, 3)}")
print(f"clusters ({outcome.partition.m}):")
for members in outcome.partition.clusters:
    values = outcome.final_opinions.opinions[list(members)]
    print(f"  {[m + 1 for m in members]} around {values.mean():.3f}")
print(f"final degrees:    {degrees(outcome.final_network).tolist()}")
print(f"aggregated group opinion: {outcome.aggregate:.4f}")
