"""Tabular dataset handling: CSV ingestion, imputation, standardization, splitting.

Feature matrices are float64 and labels are {0, 1}. Missing values are carried
as NaN between loading and imputation. Every container is immutable after
construction, so datasets and statistics can be shared freely across
concurrent trial workers; all operations are pure functions of their inputs
plus an explicit seed.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .errors import DataError, ExperimentError

_SPLIT_RETRIES = 100


def _frozen(arr: np.ndarray, dtype=None) -> np.ndarray:
    out = np.array(arr, dtype=dtype)
    out.setflags(write=False)
    return out


def minority_label_of(labels) -> int:
    """Label with the smaller sample count; ties resolve to label 1."""
    labels = np.asarray(labels)
    n0 = int(np.count_nonzero(labels == 0))
    n1 = int(labels.size) - n0
    return 0 if n0 < n1 else 1


@dataclass(frozen=True)
class Dataset:
    """A feature matrix with binary labels.

    ``minority_label`` is fixed when the dataset is first built and is
    propagated unchanged through splitting, imputation, standardization and
    oversampling, so that downstream metrics always target the same class
    even if a derived partition happens to invert the class balance.
    """

    features: np.ndarray
    labels: np.ndarray
    feature_names: tuple[str, ...]
    minority_label: int

    def __post_init__(self):
        feats = np.asarray(self.features, dtype=np.float64)
        labels = np.asarray(self.labels)
        if feats.ndim != 2:
            raise DataError("features must be a 2-D matrix")
        n, m = feats.shape
        if n < 2 or m < 1:
            raise DataError(f"dataset too small: {n} rows x {m} features")
        if labels.shape != (n,):
            raise DataError("labels must be a vector matching the feature rows")
        labels = labels.astype(np.int64, copy=True)
        if not np.isin(labels, (0, 1)).all():
            raise DataError("labels must take values in {0, 1}")
        if self.minority_label not in (0, 1):
            raise DataError("minority_label must be 0 or 1")
        names = tuple(str(name) for name in self.feature_names)
        if len(names) != m:
            raise DataError("feature_names length must match feature count")
        object.__setattr__(self, "features", _frozen(feats))
        object.__setattr__(self, "labels", _frozen(labels))
        object.__setattr__(self, "feature_names", names)
        object.__setattr__(self, "minority_label", int(self.minority_label))

    @classmethod
    def from_arrays(cls, features, labels, feature_names=None, minority_label=None) -> "Dataset":
        features = np.asarray(features, dtype=np.float64)
        if feature_names is None:
            feature_names = tuple(f"f{j}" for j in range(features.shape[1]))
        if minority_label is None:
            minority_label = minority_label_of(labels)
        return cls(features, np.asarray(labels), tuple(feature_names), minority_label)

    @property
    def n_samples(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    @property
    def class_counts(self) -> tuple[int, int]:
        n1 = int(np.count_nonzero(self.labels == 1))
        return self.n_samples - n1, n1

    @property
    def minority_count(self) -> int:
        return self.class_counts[self.minority_label]

    @property
    def majority_label(self) -> int:
        return 1 - self.minority_label

    @property
    def n_missing(self) -> int:
        return int(np.isnan(self.features).sum())

    def with_features(self, features: np.ndarray) -> "Dataset":
        return Dataset(features, self.labels, self.feature_names, self.minority_label)


@dataclass(frozen=True)
class PreprocessStats:
    """Per-feature means and standard deviations fitted on a training partition.

    Zero standard deviations are recorded as 0 and replaced by a divisor of 1
    when applied, which maps a constant column to all zeros.
    """

    means: np.ndarray
    stds: np.ndarray

    def __post_init__(self):
        means = np.asarray(self.means, dtype=np.float64)
        stds = np.asarray(self.stds, dtype=np.float64)
        if means.shape != stds.shape or means.ndim != 1:
            raise ValueError("means and stds must be matching vectors")
        if (stds < 0).any():
            raise ValueError("standard deviations must be nonnegative")
        object.__setattr__(self, "means", _frozen(means))
        object.__setattr__(self, "stds", _frozen(stds))

    @property
    def divisors(self) -> np.ndarray:
        return np.where(self.stds == 0, 1.0, self.stds)

    def apply(self, features: np.ndarray) -> np.ndarray:
        return (np.asarray(features, dtype=np.float64) - self.means) / self.divisors

    def invert(self, standardized: np.ndarray) -> np.ndarray:
        return np.asarray(standardized, dtype=np.float64) * self.divisors + self.means


@dataclass(frozen=True)
class SplitSpec:
    """Three-way split ratios (train, validation, test) plus a seed."""

    ratios: tuple[float, float, float] = (0.7, 0.15, 0.15)
    seed: int = 0

    def __post_init__(self):
        ratios = tuple(float(r) for r in self.ratios)
        if len(ratios) != 3:
            raise ValueError("exactly three split ratios are required")
        if any(not (0.0 < r < 1.0) for r in ratios):
            raise ValueError("each split ratio must lie in (0, 1)")
        if abs(sum(ratios) - 1.0) > 1e-9:
            raise ValueError("split ratios must sum to 1")
        object.__setattr__(self, "ratios", ratios)
        object.__setattr__(self, "seed", int(self.seed))


def _parses_as_float(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def load_csv(path, label_column=-1, missing_token: str = "?") -> Dataset:
    """Load a comma-separated file into a :class:`Dataset`.

    ``label_column`` is either a header name or a (possibly negative) column
    index; the default is the last column. Cells equal to ``missing_token``
    become NaN and stay that way until :func:`impute_mean` runs. Row order is
    preserved. Raw label values are mapped onto {0, 1}: numerically when both
    parse as numbers, lexicographically otherwise, smallest first.
    """
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = [[c.strip() for c in row] for row in csv.reader(fh)]
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from None
    rows = [row for row in rows if any(row)]
    if not rows:
        raise DataError(f"{path}: empty file")

    width = len(rows[0])
    if width < 2:
        raise DataError(f"{path}: need at least one feature column plus the label column")

    if isinstance(label_column, str):
        header = rows[0]
        if label_column not in header:
            raise DataError(f"{path}: label column {label_column!r} not found in header")
        label_idx = header.index(label_column)
        data_rows = rows[1:]
        names = [c for i, c in enumerate(header) if i != label_idx]
    else:
        label_idx = int(label_column)
        if label_idx < 0:
            label_idx += width
        if not 0 <= label_idx < width:
            raise DataError(f"{path}: label column index {label_column} out of range for {width} columns")
        first_is_data = all(
            cell == missing_token or _parses_as_float(cell)
            for i, cell in enumerate(rows[0])
            if i != label_idx
        )
        if first_is_data:
            data_rows = rows
            names = None
        else:
            data_rows = rows[1:]
            names = [c for i, c in enumerate(rows[0]) if i != label_idx]

    if not data_rows:
        raise DataError(f"{path}: no data rows")

    n = len(data_rows)
    m = width - 1
    features = np.empty((n, m), dtype=np.float64)
    raw_labels: list[str] = []
    for r, row in enumerate(data_rows):
        if len(row) != width:
            raise DataError(f"{path}: row {r + 1} has {len(row)} cells, expected {width}")
        col = 0
        for i, cell in enumerate(row):
            if i == label_idx:
                raw_labels.append(cell)
                continue
            if cell == missing_token:
                features[r, col] = np.nan
            elif _parses_as_float(cell):
                features[r, col] = float(cell)
            else:
                raise DataError(f"{path}: unparseable cell {cell!r} at row {r + 1}, column {i + 1}")
            col += 1

    distinct = sorted(set(raw_labels))
    if len(distinct) > 2:
        raise DataError(f"{path}: label column has {len(distinct)} distinct values, expected at most 2")
    if all(_parses_as_float(v) for v in distinct):
        distinct.sort(key=float)
    mapping = {v: i for i, v in enumerate(distinct)}
    labels = np.array([mapping[v] for v in raw_labels], dtype=np.int64)

    if names is None:
        names = [f"f{j}" for j in range(m)]
    return Dataset(features, labels, tuple(names), minority_label_of(labels))


def impute_mean(train: Dataset, others=()) -> tuple[Dataset, list[Dataset]]:
    """Replace missing cells with the per-feature mean of the training partition.

    The same training means fill missing cells in every other partition.
    Datasets without missing cells are returned unchanged, so the operation is
    idempotent and bit-preserving for clean inputs.
    """
    feats = train.features
    all_missing = np.isnan(feats).all(axis=0)
    if all_missing.any():
        bad = [train.feature_names[j] for j in np.flatnonzero(all_missing)]
        raise DataError(f"features entirely missing in the training partition: {bad}")
    with np.errstate(invalid="ignore"):
        means = np.nanmean(feats, axis=0)

    def fill(ds: Dataset) -> Dataset:
        mask = np.isnan(ds.features)
        if not mask.any():
            return ds
        return ds.with_features(np.where(mask, means, ds.features))

    return fill(train), [fill(ds) for ds in others]


def standardize(train: Dataset, others=()) -> tuple[PreprocessStats, Dataset, list[Dataset]]:
    """Shift/scale all partitions to zero mean and unit sample std of the training partition.

    Zero-variance training columns are recorded with std 0 and divided by 1,
    so they come out identically zero on the training partition.
    """
    for ds in (train, *others):
        if np.isnan(ds.features).any():
            raise DataError("standardize requires imputation to have run first")
    means = train.features.mean(axis=0)
    stds = train.features.std(axis=0, ddof=1)
    stats = PreprocessStats(means, stds)
    transformed = [ds.with_features(stats.apply(ds.features)) for ds in (train, *others)]
    return stats, transformed[0], transformed[1:]


def split(ds: Dataset, spec: SplitSpec) -> tuple[Dataset, Dataset, Dataset]:
    """Randomly partition ``ds`` into train/validation/test.

    Partition sizes are floor(n * ratio) with the remainder assigned to train.
    The permutation is redrawn (bounded retries) until every partition holds
    at least one sample of each class present in ``ds``; the draw sequence is
    fully determined by ``spec.seed``.
    """
    n = ds.n_samples
    sizes = [math.floor(n * r) for r in spec.ratios]
    sizes[0] += n - sum(sizes)
    classes = np.unique(ds.labels)
    rng = np.random.default_rng(spec.seed)
    for _ in range(_SPLIT_RETRIES):
        perm = rng.permutation(n)
        parts = (
            perm[: sizes[0]],
            perm[sizes[0] : sizes[0] + sizes[1]],
            perm[sizes[0] + sizes[1] :],
        )
        if all(np.isin(classes, ds.labels[p]).all() for p in parts):
            return tuple(
                Dataset(ds.features[p], ds.labels[p], ds.feature_names, ds.minority_label)
                for p in parts
            )
    raise ExperimentError(
        f"split retry budget exhausted: a partition of sizes {tuple(sizes)} "
        f"cannot hold every class (counts {ds.class_counts})"
    )
