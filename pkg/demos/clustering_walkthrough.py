"""Unsupervised optimum-path forest clustering on synthetic blobs.

Builds the k-NN graph, the kernel densities and the optimum-path forest for a
range of neighborhood sizes, prints the normalized cut per k, and shows which
k the automatic selection picks. Saves a scatter plot when matplotlib is
available.
"""

import numpy as np

from opfsample import build_knn_graph, cluster_ift, compute_density, find_best_k
from opfsample.cluster import normalized_cut, sweep_normalized_cuts

rng = np.random.default_rng(7)
blob = lambda center, n: rng.normal(0, 0.6, size=(n, 2)) + center
X = np.vstack([blob([0, 0], 40), blob([6, 1], 35), blob([2, 7], 25)])

print(f"{X.shape[0]} points, sweeping k = 1..12\n")
cuts, forests = sweep_normalized_cuts(X, 12)
print(" k   normalized cut   clusters")
for k, (cut, forest) in enumerate(zip(cuts, forests), start=1):
    print(f"{k:2d}   {cut:14.6f}   {forest.num_clusters:8d}")

k_star, forest = find_best_k(X, 12)
print(f"\nselected k* = {k_star} with {forest.num_clusters} clusters")
print("(on cleanly separable data many k values tie at cut 0 -- every graph")
print(" component is perfectly separated -- and ties resolve to the smallest k,")
print(" which fragments the most; larger k merges the fragments into the blobs)")

# the pieces are also available one step at a time; k = 8 recovers the blobs
g = build_knn_graph(X, 8)
dm = compute_density(g)
forest8 = cluster_ift(g, dm)
print(f"\nat k = 8: {forest8.num_clusters} clusters, roots {list(map(int, forest8.roots))}")
print(f"densities: min {dm.rho.min():.4f}, max {dm.rho.max():.4f}, sigma {dm.sigma:.4f}")
print(f"cut at k = 8: {normalized_cut(g, forest8):.6f}")
forest = forest8
k_star = 8

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 5))
    ax.scatter(X[:, 0], X[:, 1], c=forest.cluster_id, cmap="tab10", s=25)
    ax.scatter(X[forest.roots, 0], X[forest.roots, 1], marker="*", s=220,
               edgecolor="black", facecolor="yellow", label="roots")
    ax.set_title(f"optimum-path forest clustering, k* = {k_star}")
    ax.legend()
    fig.tight_layout()
    fig.savefig("clustering_walkthrough.png", dpi=120)
    print("saved clustering_walkthrough.png")
except ImportError:
    pass
