"""Independent oracles and fixture builders shared across the test suite.

Everything here deliberately avoids the library's own code paths: distances
are recomputed pairwise, path costs come from explicit path enumeration or
fixed-point closure, ranks and sign enumerations are written from scratch.
"""

from __future__ import annotations

import itertools

import numpy as np


# --- geometry -----------------------------------------------------------


def brute_force_knn(X: np.ndarray, k: int) -> list[list[int]]:
    """k nearest neighbors per row via an all-pairs sort; ties by index."""
    n = len(X)
    out = []
    for i in range(n):
        cand = [(float(np.sqrt(((X[i] - X[j]) ** 2).sum())), j) for j in range(n) if j != i]
        cand.sort()
        out.append([j for _, j in cand[:k]])
    return out


def symmetrize(knn: list[list[int]]) -> list[set[int]]:
    adj = [set(row) for row in knn]
    for i, row in enumerate(knn):
        for j in row:
            adj[j].add(i)
    return adj


def pairwise(X: np.ndarray) -> np.ndarray:
    n = len(X)
    d = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i != j:
                d[i, j] = float(np.sqrt(((X[i] - X[j]) ** 2).sum()))
    return d


# --- clustering cost oracles ---------------------------------------------


def cluster_cost_dfs(neighbors, rho, delta, roots) -> np.ndarray:
    """Max over every simple path (any start) of the min-density path value.

    Trivial paths are worth rho at roots and rho - delta elsewhere; extending
    a path by an arc takes the min with the new node's density. Exponential;
    keep n small.
    """
    n = len(rho)
    rootset = set(int(r) for r in roots)
    handicap = np.array([rho[i] if i in rootset else rho[i] - delta for i in range(n)])
    best = handicap.copy()

    def extend(i, value, visited):
        for j in neighbors[i]:
            j = int(j)
            if j in visited:
                continue
            v = min(value, rho[j])
            if v > best[j]:
                best[j] = v
            extend(j, v, visited | {j})

    for s in range(n):
        extend(s, handicap[s], {s})
    return best


def cluster_cost_closure(neighbors, rho, delta, roots) -> np.ndarray:
    """Same quantity as :func:`cluster_cost_dfs` via max-min fixed point."""
    n = len(rho)
    rootset = set(int(r) for r in roots)
    best = np.array([rho[i] if i in rootset else rho[i] - delta for i in range(n)])
    for _ in range(n):
        changed = False
        for i in range(n):
            for j in neighbors[i]:
                v = min(best[i], rho[int(j)])
                if v > best[int(j)]:
                    best[int(j)] = v
                    changed = True
        if not changed:
            break
    return best


# --- classifier cost oracles ---------------------------------------------


def classifier_cost_dfs(dist: np.ndarray, prototypes) -> np.ndarray:
    """Min over every simple path from a prototype of the max arc length."""
    n = dist.shape[0]
    best = np.full(n, np.inf)
    for r in prototypes:
        best[int(r)] = 0.0

    def extend(i, value, visited):
        for j in range(n):
            if j in visited:
                continue
            v = max(value, dist[i, j])
            if v < best[j]:
                best[j] = v
            extend(j, v, visited | {j})

    for r in prototypes:
        extend(int(r), 0.0, {int(r)})
    return best


def classifier_cost_closure(dist: np.ndarray, prototypes) -> np.ndarray:
    """Same quantity as :func:`classifier_cost_dfs` via min-max fixed point."""
    n = dist.shape[0]
    best = np.full(n, np.inf)
    best[list(map(int, prototypes))] = 0.0
    for _ in range(n):
        changed = False
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                v = max(best[i], dist[i, j])
                if v < best[j]:
                    best[j] = v
                    changed = True
        if not changed:
            break
    return best


def predict_full_scan(train_X, cost, assigned, x) -> int:
    """Reference prediction: no early exit, lowest index wins ties."""
    d = np.array([float(np.sqrt(((row - x) ** 2).sum())) for row in train_X])
    vals = np.maximum(cost, d)
    return int(assigned[int(np.argmin(vals))])


# --- statistics oracles ---------------------------------------------------


def average_ranks(values: np.ndarray) -> np.ndarray:
    """Average ranks (1-based) with ties sharing the mean of their positions."""
    values = np.asarray(values, dtype=np.float64)
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values))
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[order[j + 1]] == values[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def wilcoxon_oracle(a, b) -> tuple[float, float]:
    """(W, two-sided exact p) by enumerating all 2^n sign assignments."""
    d = np.asarray(a, dtype=np.float64) - np.asarray(b, dtype=np.float64)
    d = d[d != 0]
    n = d.size
    ranks = average_ranks(np.abs(d))
    w_plus = float(ranks[d > 0].sum())
    w_minus = float(ranks[d < 0].sum())
    w = min(w_plus, w_minus)
    total = float(ranks.sum())
    hits = 0
    for signs in itertools.product((0.0, 1.0), repeat=n):
        s_plus = float(np.dot(signs, ranks))
        if min(s_plus, total - s_plus) <= w:
            hits += 1
    return w, hits / 2.0**n


def two_pass_covariance(rows: np.ndarray) -> np.ndarray:
    """Textbook unbiased sample covariance via an explicit outer-product sum."""
    rows = np.asarray(rows, dtype=np.float64)
    n, m = rows.shape
    mu = rows.sum(axis=0) / n
    acc = np.zeros((m, m))
    for r in rows:
        dev = (r - mu).reshape(-1, 1)
        acc += dev @ dev.T
    return acc / (n - 1)


# --- oversampling geometry -------------------------------------------------


def on_segment_between(points: np.ndarray, anchors: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """For each point, whether it lies on a segment between two anchor rows.

    Solves for the interpolation coefficient against every anchor pair and
    accepts when the projection residual is below ``tol`` and the coefficient
    sits in [0, 1] (up to tiny slack).
    """
    anchors = np.asarray(anchors, dtype=np.float64)
    pairs = list(itertools.combinations(range(len(anchors)), 2))
    a = anchors[[p[0] for p in pairs]]
    d = anchors[[p[1] for p in pairs]] - a
    l2 = (d * d).sum(axis=1)
    keep = l2 > 0
    a, d, l2 = a[keep], d[keep], l2[keep]

    out = np.zeros(len(points), dtype=bool)
    dup = np.zeros(len(points), dtype=bool)
    for lo in range(0, len(points), 2048):
        s = np.asarray(points[lo : lo + 2048], dtype=np.float64)
        t = ((s[:, None, :] - a[None, :, :]) * d[None, :, :]).sum(-1) / l2
        proj = a[None, :, :] + t[:, :, None] * d[None, :, :]
        resid = np.sqrt(((proj - s[:, None, :]) ** 2).sum(-1))
        ok = (resid <= tol) & (t >= -1e-9) & (t <= 1 + 1e-9)
        out[lo : lo + len(s)] = ok.any(axis=1)
        # coincident anchors: a point equal to an anchor also counts
        coincide = np.sqrt(((s[:, None, :] - anchors[None, :, :]) ** 2).sum(-1)) <= tol
        dup[lo : lo + len(s)] = coincide.any(axis=1)
    return out | dup


# --- dataset fixtures -------------------------------------------------------


def blob_dataset(rng: np.random.Generator, n_maj=90, n_min=30, m=4, sep=2.5):
    """Two Gaussian blobs with a majority/minority imbalance; returns (X, y)."""
    maj = rng.normal(0.0, 1.0, size=(n_maj, m))
    cen = np.zeros(m)
    cen[0] = sep
    mino = rng.normal(0.0, 1.0, size=(n_min, m)) * 0.8 + cen
    X = np.vstack([maj, mino])
    y = np.concatenate([np.zeros(n_maj, dtype=int), np.ones(n_min, dtype=int)])
    perm = rng.permutation(len(y))
    return X[perm], y[perm]


def write_dataset_csv(path, X, y, header=None, missing_cells=(), missing_token="?"):
    """Write a CSV with the label in the last column; exact float round-trip."""
    lines = []
    if header is not None:
        lines.append(",".join([*header, "label"]))
    missing = set(missing_cells)
    for i, row in enumerate(np.asarray(X, dtype=np.float64)):
        cells = [
            missing_token if (i, j) in missing else repr(float(v))
            for j, v in enumerate(row)
        ]
        cells.append(str(int(y[i])))
        lines.append(",".join(cells))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
