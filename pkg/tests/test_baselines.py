import numpy as np
import pytest

from opfsample.baselines import (
    NeighborConfig,
    adasyn,
    adasyn_allocation,
    borderline_danger_mask,
    borderline_smote,
    smote,
)
from opfsample.oversample import largest_remainder

from helpers import on_segment_between


def test_smote_two_points_stay_on_segment():
    p = np.array([0.0, 0.0])
    q = np.array([2.0, 1.0])
    out = smote(np.vstack([p, q]), 200, NeighborConfig(kappa=1, seed=1))
    assert out.shape == (200, 2)
    assert on_segment_between(out, np.vstack([p, q])).all()


def test_smote_zero_request_empty():
    out = smote(np.zeros((3, 2)), 0, NeighborConfig(kappa=1, seed=1))
    assert out.shape == (0, 2)


def test_smote_containment_2d_fixture():
    rng = np.random.default_rng(61)
    X = rng.normal(size=(9, 2))
    out = smote(X, 500, NeighborConfig(kappa=3, seed=2))
    assert out.shape == (500, 2)
    assert on_segment_between(out, X).all()


def test_smote_deterministic_and_kappa_range():
    X = np.random.default_rng(62).normal(size=(6, 2))
    a = smote(X, 40, NeighborConfig(kappa=2, seed=3))
    b = smote(X, 40, NeighborConfig(kappa=2, seed=3))
    np.testing.assert_array_equal(a, b)
    with pytest.raises(ValueError, match="kappa"):
        smote(X, 10, NeighborConfig(kappa=6, seed=3))
    with pytest.raises(ValueError):
        NeighborConfig(kappa=0, seed=3)


# 8-point borderline fixture, kappa=2. Minority rows in order:
#   A danger (neighbors: one majority, one minority)
#   B, C, D safe (pure minority neighborhoods)
#   E noise (pure majority neighborhood)
_BL_MINORITY = np.array(
    [[4.5, 1.0], [5.0, 0.0], [5.1, 0.0], [4.9, 0.0], [10.0, 10.0]]
)
_BL_MAJORITY = np.array([[4.5, 2.0], [10.1, 10.0], [9.9, 10.0]])
_BL_X = np.vstack([_BL_MINORITY, _BL_MAJORITY])
_BL_Y = np.array([1, 1, 1, 1, 1, 0, 0, 0])


def test_borderline_danger_classification():
    mask = borderline_danger_mask(_BL_X, _BL_Y, NeighborConfig(kappa=2, seed=0), minority_label=1)
    np.testing.assert_array_equal(mask, [True, False, False, False, False])


def test_borderline_noise_point_never_seeds():
    # E's two neighbors are both majority: NOISE by definition
    mask = borderline_danger_mask(_BL_X, _BL_Y, NeighborConfig(kappa=2, seed=0), minority_label=1)
    assert not mask[4]


def test_borderline_safe_point_never_seeds():
    mask = borderline_danger_mask(_BL_X, _BL_Y, NeighborConfig(kappa=2, seed=0), minority_label=1)
    assert not mask[1] and not mask[2] and not mask[3]


def test_borderline_synthetics_emanate_from_the_danger_point():
    cfg = NeighborConfig(kappa=2, seed=4)
    out = borderline_smote(_BL_X, _BL_Y, 300, cfg, minority_label=1)
    assert out.shape == (300, 2)
    # A's two nearest minority neighbors are D and B: all synthetics lie on
    # a segment from A toward one of them
    a = _BL_MINORITY[0]
    anchors_ad = np.vstack([a, _BL_MINORITY[3]])
    anchors_ab = np.vstack([a, _BL_MINORITY[1]])
    ok = on_segment_between(out, anchors_ad) | on_segment_between(out, anchors_ab)
    assert ok.all()


def test_borderline_empty_danger_falls_back_to_smote(caplog):
    rng = np.random.default_rng(63)
    minority = rng.normal(size=(6, 2)) * 0.1
    majority = rng.normal(size=(4, 2)) * 0.1 + 50.0
    X = np.vstack([minority, majority])
    y = np.array([1] * 6 + [0] * 4)
    cfg = NeighborConfig(kappa=2, seed=5)
    with caplog.at_level("INFO"):
        out = borderline_smote(X, y, 25, cfg, minority_label=1)
    assert "falling back" in caplog.text
    np.testing.assert_array_equal(out, smote(minority, 25, cfg))


def test_adasyn_weight_concentration():
    # r = (1, 0): x1 sits next to a majority point, x2 next to x1
    X = np.array([[0.0], [1.0], [2.1]])
    y = np.array([0, 1, 1])
    cfg = NeighborConfig(kappa=1, seed=6)
    counts = adasyn_allocation(X, y, cfg, 6, minority_label=1)
    np.testing.assert_array_equal(counts, [6, 0])
    out = adasyn(X, y, cfg, 6, minority_label=1)
    assert out.shape == (6, 1)
    # every synthetic interpolates x1 toward its only minority neighbor x2
    assert on_segment_between(out, np.array([[1.0], [2.1]])).all()


def test_adasyn_uniform_weights_split_proportionally():
    # every minority point fully surrounded by majority: equal weights
    sites = [0.0, 50.0, 100.0]
    minority = np.array([[s, 0.05] for s in sites])
    majority = np.array([[s + dx, 0.0] for s in sites for dx in (-0.1, 0.1)])
    X = np.vstack([minority, majority])
    y = np.array([1] * 3 + [0] * 6)
    counts = adasyn_allocation(X, y, NeighborConfig(kappa=2, seed=7), 6, minority_label=1)
    np.testing.assert_array_equal(counts, [2, 2, 2])


def test_adasyn_normalization_arithmetic():
    # the documented r = (2/5, 1/5, 2/5), n_new = 5 case, at the allocation level
    r = np.array([2 / 5, 1 / 5, 2 / 5])
    counts = largest_remainder(r / r.sum() * 5, 5)
    np.testing.assert_array_equal(counts, [2, 1, 2])


def test_adasyn_zero_weights_fall_back_to_smote(caplog):
    rng = np.random.default_rng(64)
    minority = rng.normal(size=(5, 2)) * 0.1
    majority = rng.normal(size=(4, 2)) * 0.1 + 50.0
    X = np.vstack([minority, majority])
    y = np.array([1] * 5 + [0] * 4)
    cfg = NeighborConfig(kappa=2, seed=8)
    with caplog.at_level("INFO"):
        out = adasyn(X, y, cfg, 30, minority_label=1)
    assert "falling back" in caplog.text
    np.testing.assert_array_equal(out, smote(minority, 30, cfg))


def test_all_methods_emit_exact_counts_and_are_deterministic():
    rng = np.random.default_rng(65)
    minority = rng.normal(size=(12, 3))
    majority = rng.normal(size=(25, 3)) + 1.5
    X = np.vstack([minority, majority])
    y = np.array([1] * 12 + [0] * 25)
    cfg = NeighborConfig(kappa=4, seed=9)
    for n_new in (1, 13, 77):
        s = smote(minority, n_new, cfg)
        b = borderline_smote(X, y, n_new, cfg, minority_label=1)
        a = adasyn(X, y, cfg, n_new, minority_label=1)
        for out in (s, b, a):
            assert out.shape == (n_new, 3)
        np.testing.assert_array_equal(s, smote(minority, n_new, cfg))
        np.testing.assert_array_equal(b, borderline_smote(X, y, n_new, cfg, minority_label=1))
        np.testing.assert_array_equal(a, adasyn(X, y, cfg, n_new, minority_label=1))


def test_all_methods_interpolate_between_minority_points():
    rng = np.random.default_rng(66)
    minority = rng.normal(size=(10, 2))
    majority = rng.normal(size=(20, 2)) + 1.0
    X = np.vstack([minority, majority])
    y = np.array([1] * 10 + [0] * 20)
    cfg = NeighborConfig(kappa=3, seed=10)
    for out in (
        smote(minority, 400, cfg),
        borderline_smote(X, y, 400, cfg, minority_label=1),
        adasyn(X, y, cfg, 400, minority_label=1),
    ):
        assert on_segment_between(out, minority).all()


def test_minority_inference_without_explicit_label():
    rng = np.random.default_rng(67)
    minority = rng.normal(size=(5, 2))
    majority = rng.normal(size=(15, 2)) + 3.0
    X = np.vstack([majority, minority])
    y = np.array([0] * 15 + [1] * 5)
    cfg = NeighborConfig(kappa=2, seed=11)
    out = borderline_smote(X, y, 10, cfg)  # minority inferred as label 1
    assert out.shape == (10, 2)
    assert on_segment_between(out, minority).all()
