"""How the confidence bound shapes the final opinion landscape (a desk-sized
version of the clusters-vs-confidence study).

A tolerant group (epsilon near 0.5) almost always merges into one cluster; a
narrow confidence bound leaves several camps standing. Community networks
end up with fewer clusters than the others here: their opinions start
pre-sorted into two tight factions that are easy to merge internally.
Writes clusters_vs_confidence.csv; pass --plot for a PNG.
"""

import sys

from coevo import NetworkKind, SweepSpec, run_sweep, summarize

spec = SweepSpec(
    n_values=(10, 30, 50),
    epsilon_values=(0.30, 0.35, 0.40, 0.45, 0.50),
    phi_values=(0.1,),
    p_values=(2,),
    network_kinds=tuple(NetworkKind),
    replicates=60,
    base_seed=7,
)

results = summarize(run_sweep(spec))

print("network      n   eps    mean clusters  cap hits")
for cell in results:
    print(
        f"{cell.network_kind.value:<12} {cell.n:<3d} {cell.epsilon:.2f}   "
        f"{cell.mean_clusters:6.2f}        {cell.cap_hits}"
    )

with open("clusters_vs_confidence.csv", "w") as fh:
    fh.write("network,n,epsilon,mean_clusters,std_clusters,cap_hits\n")
    for cell in results:
        fh.write(
            f"{cell.network_kind.value},{cell.n},{cell.epsilon!r},"
            f"{cell.mean_clusters!r},{cell.std_clusters!r},{cell.cap_hits}\n"
        )
print("\nwrote clusters_vs_confidence.csv")

if "--plot" in sys.argv:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 3, figsize=(12, 3.5), sharey=True)
    for ax, kind in zip(axes, NetworkKind):
        for n in (10, 30, 50):
            xs = [c.epsilon for c in results if c.network_kind is kind and c.n == n]
            ys = [c.mean_clusters for c in results if c.network_kind is kind and c.n == n]
            ax.plot(xs, ys, marker="o", label=f"n={n}")
        ax.set_title(kind.value)
        ax.set_xlabel("confidence bound epsilon")
    axes[0].set_ylabel("mean cluster count")
    axes[0].legend()
    fig.tight_layout()
    fig.savefig("clusters_vs_confidence.png", dpi=120)
    print("wrote clusters_vs_confidence.png")
