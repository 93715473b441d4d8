"""How long a group takes to settle, as a function of its size, the members'
persistence, and the starting topology (a desk-sized version of the
steps-vs-size study).

Persistence p caps each concession at 1/p of the disagreement, so stubborn
groups (larger p) need more rounds. Community networks start with opinions
split into two camps, which costs extra rounds, and the cost grows with p.
Writes steps_vs_size.csv next to this script; pass --plot for a PNG too.
"""

import sys

from coevo import NetworkKind, SweepSpec, run_sweep, summarize

spec = SweepSpec(
    n_values=tuple(range(10, 51, 10)),
    epsilon_values=(0.5,),
    phi_values=(0.1,),
    p_values=(2, 3, 4),
    network_kinds=tuple(NetworkKind),
    replicates=40,
    base_seed=7,
)

results = summarize(run_sweep(spec))

print("network      n   p   mean steps  (std)")
for cell in results:
    print(
        f"{cell.network_kind.value:<12} {cell.n:<3d} {cell.p}   "
        f"{cell.mean_steps:8.1f}  ({cell.std_steps:.1f})"
    )

with open("steps_vs_size.csv", "w") as fh:
    fh.write("network,n,p,mean_steps,std_steps\n")
    for cell in results:
        fh.write(
            f"{cell.network_kind.value},{cell.n},{cell.p},"
            f"{cell.mean_steps!r},{cell.std_steps!r}\n"
        )
print("\nwrote steps_vs_size.csv")

if "--plot" in sys.argv:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 3, figsize=(12, 3.5), sharey=True)
    for ax, kind in zip(axes, NetworkKind):
        for p in (2, 3, 4):
            xs = [c.n for c in results if c.network_kind is kind and c.p == p]
            ys = [c.mean_steps for c in results if c.network_kind is kind and c.p == p]
            ax.plot(xs, ys, marker="o", label=f"p={p}")
        ax.set_title(kind.value)
        ax.set_xlabel("group size n")
    axes[0].set_ylabel("mean interactions to stability")
    axes[0].legend()
    fig.tight_layout()
    fig.savefig("steps_vs_size.png", dpi=120)
    print("wrote steps_vs_size.png")
