"""Minority oversampling: cluster-guided Gaussians next to the SMOTE family.

Balances an imbalanced two-blob dataset with each method and compares the
class counts and where the synthetic points land. Saves a comparison figure
when matplotlib is available.
"""

import numpy as np

from opfsample import Dataset, NeighborConfig, adasyn, borderline_smote, oversample_to_count, smote

rng = np.random.default_rng(13)
n_maj, n_min = 120, 30
majority = rng.normal(size=(n_maj, 2))
minority = rng.normal(size=(n_min, 2)) * np.array([0.9, 0.5]) + [3.0, 1.0]
X = np.vstack([majority, minority])
y = np.r_[np.zeros(n_maj, dtype=int), np.ones(n_min, dtype=int)]
ds = Dataset.from_arrays(X, y)
n_new = n_maj - n_min
print(f"dataset: {n_maj} majority / {n_min} minority; synthesizing {n_new} samples\n")

balanced = oversample_to_count(ds, n_new, k_max=10, seed=42)
print(f"opf oversampler: counts {balanced.class_counts}")
opf_rows = balanced.features[ds.n_samples :]

cfg = NeighborConfig(kappa=5, seed=42)
batches = {
    "opf-gaussian": opf_rows,
    "smote": smote(minority, n_new, cfg),
    "borderline-smote": borderline_smote(X, y, n_new, cfg, minority_label=1),
    "adasyn": adasyn(X, y, cfg, n_new, minority_label=1),
}

print(f"\n{'method':18s} {'rows':>5s} {'mean x':>8s} {'mean y':>8s} {'spread':>8s}")
for name, rows in batches.items():
    spread = rows.std(axis=0).mean()
    print(f"{name:18s} {len(rows):5d} {rows[:, 0].mean():8.3f} {rows[:, 1].mean():8.3f} {spread:8.3f}")

print("\nSMOTE-family rows always lie between two real minority points;")
print("the Gaussian sampler can fill the interior of each minority cluster.")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(2, 2, figsize=(10, 8), sharex=True, sharey=True)
    for ax, (name, rows) in zip(axes.ravel(), batches.items()):
        ax.scatter(majority[:, 0], majority[:, 1], s=12, c="lightgray", label="majority")
        ax.scatter(minority[:, 0], minority[:, 1], s=16, c="tab:blue", label="minority")
        ax.scatter(rows[:, 0], rows[:, 1], s=16, c="tab:red", marker="x", label="synthetic")
        ax.set_title(name)
    axes[0, 0].legend(loc="upper left")
    fig.tight_layout()
    fig.savefig("oversampling_walkthrough.png", dpi=120)
    print("saved oversampling_walkthrough.png")
except ImportError:
    pass
