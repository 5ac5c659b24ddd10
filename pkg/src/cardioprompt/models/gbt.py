"""Gradient-boosted trees with logistic loss, first-order only.

Each round fits a regression tree to the residual y - p and adds
learning_rate times its prediction to the additive score. Leaves carry plain
mean residuals (no Hessian reweighting), and the base score is the training
log-odds, so learning_rate 0 leaves the constant base-rate predictor.
colsample_bytree draws one feature subset per tree from the model's seed
stream. use_label_encoder and eval_metric are accepted for interface parity
but do not change the fitted model; eval_metric only selects which training
metric gets recorded per round.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import ValidationError
from .tree import DecisionTree


def _sigmoid(z: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-np.clip(z, -500, 500)))


@dataclass
class GradientBoostedTrees:
    n_estimators: int = 100
    learning_rate: float = 0.1
    max_depth: int = 3
    colsample_bytree: float = 1.0
    use_label_encoder: bool = False  # inert, interface parity
    eval_metric: str = "logloss"  # "logloss" or "error"; recorded history only
    seed: int = 0

    base_score_: float = 0.0
    trees: list[DecisionTree] = field(default_factory=list, repr=False)
    tree_cols: list[np.ndarray] = field(default_factory=list, repr=False)
    history_: list[float] = field(default_factory=list, repr=False)
    n_features_: int = 0

    def fit(self, X: np.ndarray, y: np.ndarray):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=float)
        if not np.isin(y, (0.0, 1.0)).all():
            raise ValidationError("labels must be 0/1")
        if not 0 < self.colsample_bytree <= 1:
            raise ValidationError("colsample_bytree must be in (0, 1]")
        if self.learning_rate < 0:
            raise ValidationError("learning_rate must be >= 0")
        if self.eval_metric not in ("logloss", "error"):
            raise ValidationError(f"unknown eval_metric {self.eval_metric!r}")
        n, self.n_features_ = X.shape

        pbar = float(y.mean())
        pbar = min(max(pbar, 1e-12), 1 - 1e-12)  # pure classes keep a finite base
        self.base_score_ = float(np.log(pbar / (1 - pbar)))

        rng = np.random.default_rng(self.seed)
        n_cols = max(1, int(round(self.colsample_bytree * self.n_features_)))
        F = np.full(n, self.base_score_)
        self.trees, self.tree_cols, self.history_ = [], [], []
        for _ in range(self.n_estimators):
            cols = np.sort(rng.choice(self.n_features_, size=n_cols, replace=False))
            p = _sigmoid(F)
            residual = y - p
            tree = DecisionTree(max_depth=self.max_depth, criterion="mse")
            tree.fit(X[:, cols], residual)
            self.trees.append(tree)
            self.tree_cols.append(cols)
            F = F + self.learning_rate * tree.predict_value(X[:, cols])
            p = _sigmoid(F)
            if self.eval_metric == "logloss":
                eps = 1e-12
                self.history_.append(float(-(y * np.log(p + eps) + (1 - y) * np.log(1 - p + eps)).mean()))
            else:
                self.history_.append(float(((p >= 0.5).astype(int) != y).mean()))
        return self

    def decision_function(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X[None, :]
        if X.shape[1] != self.n_features_:
            raise ValidationError(f"expected {self.n_features_} features, got {X.shape[1]}")
        F = np.full(len(X), self.base_score_)
        for tree, cols in zip(self.trees, self.tree_cols):
            F = F + self.learning_rate * tree.predict_value(X[:, cols])
        return F

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        return _sigmoid(self.decision_function(X))

    def predict(self, X: np.ndarray) -> np.ndarray:
        return (self.predict_proba(X) >= 0.5).astype(int)  # tie at 0.5 predicts 1

    def raw_importance(self) -> np.ndarray:
        """Summed variance reduction per original feature across all rounds."""
        acc = np.zeros(self.n_features_)
        for tree, cols in zip(self.trees, self.tree_cols):
            acc[cols] += tree.importance_raw_
        return acc
