"""Confusion counting, the seven-metric row, and the trivial baselines."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cardioprompt.errors import ValidationError
from cardioprompt.metrics import (
    ConfusionMatrix,
    CostWeights,
    baseline_predict,
    classification_metrics,
    confusion,
    cost_metrics,
    metrics_row,
)


class TestConfusion:
    def test_perfect_three(self):
        cm = confusion([1, 0, 1], [1, 0, 1])
        assert (cm.tp, cm.tn, cm.fp, cm.fn) == (2, 1, 0, 0)

    def test_all_ones_against_mixed(self):
        cm = confusion([1, 1], [1, 0])
        assert (cm.tp, cm.fp, cm.tn, cm.fn) == (1, 1, 0, 0)

    def test_all_misses(self):
        cm = confusion([0, 0], [1, 1])
        assert cm.fn == 2

    def test_length_mismatch(self):
        with pytest.raises(ValidationError):
            confusion([1], [1, 0])

    def test_non_binary_rejected(self):
        with pytest.raises(ValidationError):
            confusion([2], [1])


class TestClassificationMetrics:
    def test_reference_row(self):
        # counts recovered from a published result row; all four metrics
        # reproduce the reported values at 4 decimals
        got = classification_metrics(ConfusionMatrix(tp=91, tn=65, fp=15, fn=13))
        assert got == pytest.approx((0.8585, 0.8750, 0.8667, 0.8478), abs=1e-4)

    def test_perfect(self):
        assert classification_metrics(ConfusionMatrix(5, 5, 0, 0)) == (1.0, 1.0, 1.0, 1.0)

    def test_zero_over_zero_is_zero(self):
        p, r, f1, acc = classification_metrics(ConfusionMatrix(tp=0, tn=3, fp=0, fn=0))
        assert (p, r, f1) == (0.0, 0.0, 0.0)
        assert acc == 1.0

    def test_empty_rejected(self):
        with pytest.raises(ValidationError):
            classification_metrics(ConfusionMatrix(0, 0, 0, 0))


class TestCostMetrics:
    def test_reference_row(self):
        fp_cost, fn_cost, csa = cost_metrics(ConfusionMatrix(91, 65, 15, 13))
        assert fp_cost == pytest.approx(3.0)
        assert fn_cost == pytest.approx(10.4)
        assert csa == pytest.approx(156 / 169.4, abs=1e-9)

    def test_published_triple_within_tolerance(self):
        # three independently published cost-sensitive accuracies
        rows = [
            (ConfusionMatrix(91, 65, 15, 13), 0.9208),
            (ConfusionMatrix(91, 66, 14, 13), 0.9224),
            (ConfusionMatrix(103, 18, 62, 1), 0.9016),
        ]
        for cm, reported in rows:
            _, _, csa = cost_metrics(cm)
            assert csa == pytest.approx(reported, abs=1e-3)

    def test_no_errors_means_one(self):
        assert cost_metrics(ConfusionMatrix(3, 4, 0, 0))[2] == 1.0

    def test_all_wrong_means_zero(self):
        assert cost_metrics(ConfusionMatrix(0, 0, 0, 5))[2] == 0.0

    def test_reduces_to_accuracy_with_unit_weights(self):
        cm = ConfusionMatrix(7, 5, 2, 3)
        _, _, csa = cost_metrics(cm, CostWeights(1.0, 1.0))
        assert csa == pytest.approx((7 + 5) / 17)

    def test_strictly_decreasing_in_errors(self):
        base = cost_metrics(ConfusionMatrix(10, 10, 2, 2))[2]
        assert cost_metrics(ConfusionMatrix(10, 10, 3, 2))[2] < base
        assert cost_metrics(ConfusionMatrix(10, 10, 2, 3))[2] < base

    def test_count_recovery_identity(self):
        w = CostWeights()
        cm = ConfusionMatrix(4, 3, 6, 9)
        fp_cost, fn_cost, _ = cost_metrics(cm, w)
        assert fp_cost / w.w_fp == pytest.approx(cm.fp)
        assert fn_cost / w.w_fn == pytest.approx(cm.fn)

    def test_bad_weights_rejected(self):
        with pytest.raises(ValidationError):
            CostWeights(-0.1, 0.8)
        with pytest.raises(ValidationError):
            CostWeights(0.0, 0.0)


def test_brute_force_oracle_200_pairs():
    # all seven metrics equal a naive recount on 200 random pairs
    rng = np.random.default_rng(123)
    w = CostWeights()
    for _ in range(200):
        n = int(rng.integers(1, 21))
        preds = rng.integers(0, 2, size=n)
        truth = rng.integers(0, 2, size=n)
        row = metrics_row(confusion(preds, truth), w)

        tp = sum(1 for p, t in zip(preds, truth) if p == 1 and t == 1)
        tn = sum(1 for p, t in zip(preds, truth) if p == 0 and t == 0)
        fp = sum(1 for p, t in zip(preds, truth) if p == 1 and t == 0)
        fn = sum(1 for p, t in zip(preds, truth) if p == 0 and t == 1)
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        accuracy = (tp + tn) / n
        fp_cost = w.w_fp * fp
        fn_cost = w.w_fn * fn
        denom = tp + tn + fp_cost + fn_cost
        csa = (tp + tn) / denom if denom else 0.0
        assert row.as_tuple() == (precision, recall, f1, accuracy, fp_cost, fn_cost, csa)


@given(st.integers(0, 50), st.integers(0, 50), st.integers(0, 50), st.integers(0, 50))
@settings(max_examples=60, deadline=None)
def test_metric_ranges(tp, tn, fp, fn):
    if tp + tn + fp + fn == 0:
        return
    cm = ConfusionMatrix(tp, tn, fp, fn)
    p, r, f1, acc = classification_metrics(cm)
    fp_cost, fn_cost, csa = cost_metrics(cm)
    for v in (p, r, f1, acc, csa):
        assert 0.0 <= v <= 1.0
    assert fp_cost >= 0 and fn_cost >= 0


class TestBaselines:
    def test_constant_kinds(self):
        assert baseline_predict("maj1", 3) == [1, 1, 1]
        assert baseline_predict("maj0", 3) == [0, 0, 0]

    def test_random_deterministic_per_seed(self):
        assert baseline_predict("random", 20, seed=5) == baseline_predict("random", 20, seed=5)

    def test_maj1_recall_one(self):
        truth = [1, 0, 1, 1, 0]
        cm = confusion(baseline_predict("maj1", 5), truth)
        assert cm.fn == 0
        assert classification_metrics(cm)[1] == 1.0

    def test_unknown_kind(self):
        with pytest.raises(ValidationError):
            baseline_predict("other", 3)
