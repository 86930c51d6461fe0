"""Unsupervised optimum-path forest clustering on a k-nearest-neighbor graph.

Each sample gets a Gaussian kernel density estimated over its graph
neighborhood; a max-priority competition then grows one optimum-path tree per
emergent density maximum, so the number of clusters is never supplied by the
caller. The neighborhood size k is selected by minimizing a normalized cut
over a search range.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

SQRT_TWO_PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class KnnGraph:
    """Symmetrized k-NN adjacency with per-arc Euclidean distances.

    ``neighbors[i]`` lists adjacent node indices in ascending order;
    ``distances[i]`` is aligned with it. ``k`` is the nominal neighborhood
    size before symmetrization (symmetrization only ever adds arcs).
    """

    k: int
    neighbors: tuple[np.ndarray, ...]
    distances: tuple[np.ndarray, ...]
    d_max: float

    @property
    def n_nodes(self) -> int:
        return len(self.neighbors)


@dataclass(frozen=True)
class DensityMap:
    """Per-node density scores plus the kernel width and the plateau gap delta."""

    rho: np.ndarray
    sigma: float
    delta: float


@dataclass(frozen=True)
class ClusterForest:
    """Result of the clustering competition.

    ``pred`` holds -1 for roots; ``roots[c]`` is the root node of cluster c,
    in promotion order, so ``cluster_id[roots[c]] == c``.
    """

    cost: np.ndarray
    pred: np.ndarray
    cluster_id: np.ndarray
    roots: np.ndarray
    num_clusters: int


def pairwise_distances(X: np.ndarray) -> np.ndarray:
    """Exact Euclidean distance matrix, row by row (no cancellation tricks)."""
    X = np.asarray(X, dtype=np.float64)
    n = X.shape[0]
    out = np.empty((n, n), dtype=np.float64)
    for i in range(n):
        out[i] = np.sqrt(((X - X[i]) ** 2).sum(axis=1))
    np.fill_diagonal(out, 0.0)
    return out


def _neighbor_order(dist: np.ndarray) -> np.ndarray:
    """All other nodes sorted by distance per row; stable, self excluded."""
    n = dist.shape[0]
    order = np.argsort(dist, axis=1, kind="stable")
    out = np.empty((n, n - 1), dtype=np.intp)
    for i in range(n):
        row = order[i]
        out[i] = row[row != i]
    return out


def _graph_from_prefix(dist: np.ndarray, order: np.ndarray, k: int) -> KnnGraph:
    n = dist.shape[0]
    adj = [set(map(int, order[i, :k])) for i in range(n)]
    for i in range(n):
        for j in order[i, :k]:
            adj[int(j)].add(i)
    neighbors = tuple(np.array(sorted(s), dtype=np.intp) for s in adj)
    distances = tuple(dist[i, nb] for i, nb in enumerate(neighbors))
    d_max = max(float(d.max()) for d in distances)
    for d in distances:
        d.setflags(write=False)
    return KnnGraph(int(k), neighbors, distances, d_max)


def build_knn_graph(X: np.ndarray, k: int) -> KnnGraph:
    """Connect each sample to its k nearest neighbors, then symmetrize."""
    X = np.asarray(X, dtype=np.float64)
    n = X.shape[0]
    if not 1 <= k < n:
        raise ValueError(f"k must satisfy 1 <= k < n, got k={k}, n={n}")
    if np.isnan(X).any():
        raise ValueError("clustering input must not contain NaN")
    dist = pairwise_distances(X)
    return _graph_from_prefix(dist, _neighbor_order(dist), k)


def compute_density(g: KnnGraph, squared_exponent: bool = False) -> DensityMap:
    """Gaussian kernel density over each node's (symmetrized) neighborhood.

    The kernel width is sigma = d_max / 3 and the normalizer uses the nominal
    k. By default the exponent is -d / (2 sigma^2); ``squared_exponent``
    switches to the classical -d^2 / (2 sigma^2) form.

    When every pairwise distance is zero the density is uniform by
    construction and a single cluster results downstream.
    """
    n = g.n_nodes
    if g.d_max == 0.0:
        sigma = float(np.finfo(np.float64).eps)
        rho = np.full(n, 1.0 / (SQRT_TWO_PI * sigma))
    else:
        sigma = g.d_max / 3.0
        coef = 1.0 / (g.k * SQRT_TWO_PI * sigma)
        denom = 2.0 * sigma * sigma
        rho = np.empty(n, dtype=np.float64)
        for i in range(n):
            d = g.distances[i]
            e = d * d if squared_exponent else d
            rho[i] = coef * np.exp(-e / denom).sum()

    delta = math.inf
    for i in range(n):
        gaps = np.abs(rho[g.neighbors[i]] - rho[i])
        gaps = gaps[gaps > 0]
        if gaps.size:
            delta = min(delta, float(gaps.min()))
    if not math.isfinite(delta):
        # Pure plateau: any positive gap works, as long as rho - delta != rho.
        delta = max(1.0, 4.0 * float(np.spacing(rho.max())))
    rho.setflags(write=False)
    return DensityMap(rho, float(sigma), float(delta))


def cluster_ift(g: KnnGraph, dm: DensityMap) -> ClusterForest:
    """Grow optimum-path trees from emergent density maxima.

    Every node starts with a handicap cost rho - delta and no predecessor.
    Nodes are removed in order of maximum current cost (FIFO on ties); the
    first time an unconquered node is removed it is promoted to a root with
    cost rho. A removed node offers each remaining neighbor j the value
    min(cost_i, rho_j), which conquers j whenever it strictly improves j's
    cost. Each conquered node inherits its conqueror's cluster.
    """
    rho = dm.rho
    n = g.n_nodes
    if rho.shape != (n,):
        raise ValueError("density map does not match the graph")
    cost = rho - dm.delta
    pred = np.full(n, -1, dtype=np.intp)
    cid = np.full(n, -1, dtype=np.intp)
    removed = np.zeros(n, dtype=bool)
    roots: list[int] = []

    counter = 0
    heap: list[tuple[float, int, int]] = []
    for i in range(n):
        heap.append((-cost[i], counter, i))
        counter += 1
    heapq.heapify(heap)

    while heap:
        neg, _, i = heapq.heappop(heap)
        if removed[i] or -neg != cost[i]:
            continue
        removed[i] = True
        if pred[i] == -1:
            cost[i] = rho[i]
            cid[i] = len(roots)
            roots.append(i)
        for j, dij in zip(g.neighbors[i], g.distances[i]):
            if removed[j]:
                continue
            offer = min(cost[i], rho[j])
            if offer > cost[j]:
                cost[j] = offer
                pred[j] = i
                cid[j] = cid[i]
                heapq.heappush(heap, (-offer, counter, j))
                counter += 1

    cost.setflags(write=False)
    pred.setflags(write=False)
    cid.setflags(write=False)
    roots_arr = np.array(roots, dtype=np.intp)
    roots_arr.setflags(write=False)
    return ClusterForest(cost, pred, cid, roots_arr, len(roots))


def normalized_cut(g: KnnGraph, forest: ClusterForest) -> float:
    """Sum over clusters of external affinity over total affinity.

    Arc affinity is 1 / (1 + d), so heavier weight means closer samples. A
    single-cluster forest has no external arcs and scores 0. Each term lies
    in [0, 1], so the total lies in [0, num_clusters].
    """
    cid = forest.cluster_id
    internal = np.zeros(forest.num_clusters, dtype=np.float64)
    external = np.zeros(forest.num_clusters, dtype=np.float64)
    for i in range(g.n_nodes):
        ci = cid[i]
        w = 1.0 / (1.0 + g.distances[i])
        same = cid[g.neighbors[i]] == ci
        internal[ci] += w[same].sum()
        external[ci] += w[~same].sum()
    total = internal + external
    with np.errstate(invalid="ignore", divide="ignore"):
        terms = np.where(total > 0, external / np.where(total > 0, total, 1.0), 0.0)
    return float(terms.sum())


def sweep_normalized_cuts(
    X: np.ndarray, k_max: int, squared_exponent: bool = False
) -> tuple[np.ndarray, list[ClusterForest]]:
    """Cluster once per k in 1..k_max and report each normalized cut.

    The pairwise distances and the per-node neighbor ordering are computed
    once and shared, so the graph for every k is identical to what
    :func:`build_knn_graph` would produce.
    """
    X = np.asarray(X, dtype=np.float64)
    n = X.shape[0]
    if not 1 <= k_max < n:
        raise ValueError(f"k_max must satisfy 1 <= k_max < n, got k_max={k_max}, n={n}")
    if np.isnan(X).any():
        raise ValueError("clustering input must not contain NaN")
    dist = pairwise_distances(X)
    order = _neighbor_order(dist)
    cuts = np.empty(k_max, dtype=np.float64)
    forests: list[ClusterForest] = []
    for k in range(1, k_max + 1):
        g = _graph_from_prefix(dist, order, k)
        forest = cluster_ift(g, compute_density(g, squared_exponent))
        cuts[k - 1] = normalized_cut(g, forest)
        forests.append(forest)
    return cuts, forests


def find_best_k(
    X: np.ndarray, k_max: int, squared_exponent: bool = False
) -> tuple[int, ClusterForest]:
    """Pick the k in 1..k_max minimizing the normalized cut (ties go low)."""
    cuts, forests = sweep_normalized_cuts(X, k_max, squared_exponent)
    best = int(np.argmin(cuts))
    return best + 1, forests[best]
