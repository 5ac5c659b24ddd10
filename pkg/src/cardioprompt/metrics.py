"""Confusion counting, the seven report metrics, and trivial baselines.

Cost-sensitive accuracy is correct / (correct + w_fp*FP + w_fn*FN); with the
default weights (0.2, 0.8) this reproduces published reference rows to 1e-3
(see scripts/check_cost_formula.py for the derivation check).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ValidationError


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    tn: int
    fp: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn


@dataclass(frozen=True)
class CostWeights:
    w_fp: float = 0.2
    w_fn: float = 0.8

    def __post_init__(self):
        if self.w_fp < 0 or self.w_fn < 0 or (self.w_fp == 0 and self.w_fn == 0):
            raise ValidationError("cost weights must be nonnegative and not both zero")


@dataclass(frozen=True)
class MetricsRow:
    precision: float
    recall: float
    f1: float
    accuracy: float
    fp_cost: float
    fn_cost: float
    cost_sensitive_accuracy: float

    def as_tuple(self) -> tuple[float, ...]:
        return (
            self.precision,
            self.recall,
            self.f1,
            self.accuracy,
            self.fp_cost,
            self.fn_cost,
            self.cost_sensitive_accuracy,
        )


def confusion(preds: Sequence[int], truth: Sequence[int]) -> ConfusionMatrix:
    """Count the four cells; positive class is 1."""
    preds = np.asarray(preds, dtype=int)
    truth = np.asarray(truth, dtype=int)
    if preds.shape != truth.shape:
        raise ValidationError(f"length mismatch: {preds.shape[0]} predictions vs {truth.shape[0]} labels")
    for arr, what in ((preds, "predictions"), (truth, "labels")):
        bad = set(np.unique(arr)) - {0, 1}
        if bad:
            raise ValidationError(f"{what} must be 0/1, found {sorted(bad)}")
    return ConfusionMatrix(
        tp=int(((preds == 1) & (truth == 1)).sum()),
        tn=int(((preds == 0) & (truth == 0)).sum()),
        fp=int(((preds == 1) & (truth == 0)).sum()),
        fn=int(((preds == 0) & (truth == 1)).sum()),
    )


def _ratio(num: float, den: float) -> float:
    return num / den if den else 0.0  # 0/0 defined as 0


def classification_metrics(cm: ConfusionMatrix) -> tuple[float, float, float, float]:
    """(precision, recall, f1, accuracy) with 0/0 ratios defined as 0."""
    if cm.total == 0:
        raise ValidationError("empty confusion matrix")
    precision = _ratio(cm.tp, cm.tp + cm.fp)
    recall = _ratio(cm.tp, cm.tp + cm.fn)
    f1 = _ratio(2 * precision * recall, precision + recall)
    accuracy = (cm.tp + cm.tn) / cm.total
    return precision, recall, f1, accuracy


def cost_metrics(cm: ConfusionMatrix, w: CostWeights = CostWeights()) -> tuple[float, float, float]:
    """(fp_cost, fn_cost, cost-sensitive accuracy)."""
    if cm.total == 0:
        raise ValidationError("empty confusion matrix")
    fp_cost = w.w_fp * cm.fp
    fn_cost = w.w_fn * cm.fn
    correct = cm.tp + cm.tn
    csa = _ratio(correct, correct + fp_cost + fn_cost)
    return fp_cost, fn_cost, csa


def metrics_row(cm: ConfusionMatrix, w: CostWeights = CostWeights()) -> MetricsRow:
    precision, recall, f1, accuracy = classification_metrics(cm)
    fp_cost, fn_cost, csa = cost_metrics(cm, w)
    return MetricsRow(precision, recall, f1, accuracy, fp_cost, fn_cost, csa)


def baseline_predict(kind: str, n: int, seed: int = 0) -> list[int]:
    """Non-informed baselines: all-ones, all-zeros, or a seeded fair coin."""
    if n < 0:
        raise ValidationError("n must be >= 0")
    if kind == "maj1":
        return [1] * n
    if kind == "maj0":
        return [0] * n
    if kind == "random":
        rng = np.random.default_rng(seed)
        return [int(v) for v in rng.integers(0, 2, size=n)]
    raise ValidationError(f"unknown baseline kind {kind!r}")
