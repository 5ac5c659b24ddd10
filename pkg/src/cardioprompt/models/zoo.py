"""Uniform training surface over the six classifier families.

train() builds and fits the family's estimator from a hyperparameter
assignment; the returned TrainedModel owns the estimator, the assignment, and
(once requested) a normalized importance ranking. Estimators whose internals
carry no importance score (KNN, MLP) get permutation importance on demand.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from ..data import Dataset
from ..errors import ValidationError
from ..schema import DEFAULT_SCHEMA, FeatureSchema
from .adaboost import AdaBoostStumps
from .forest import RandomForest
from .gbt import GradientBoostedTrees
from .importance import ImportanceRanking, build_ranking, permutation_importance
from .knn import KNNClassifier
from .logistic import LogisticRegressionGD
from .mlp import MLPClassifier
from .spaces import FAMILIES

# families whose estimator exposes a raw importance vector directly
_INTRINSIC_IMPORTANCE = ("RF", "LR", "GBT", "ADA")


@dataclass(frozen=True)
class TrainedModel:
    family: str
    hyper: dict
    estimator: object
    converged: bool = True
    importance: ImportanceRanking | None = None

    def predict(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        single = X.ndim == 1
        out = self.estimator.predict(X)
        return out[0] if single else out

    def predict_proba(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        single = X.ndim == 1
        out = self.estimator.predict_proba(X)
        return out[0] if single else out


def _build_estimator(family: str, hyper: dict, seed: int):
    if family == "RF":
        return RandomForest(seed=seed, **hyper)
    if family == "LR":
        return LogisticRegressionGD(**hyper)
    if family == "MLP":
        return MLPClassifier(seed=seed, **hyper)
    if family == "KNN":
        return KNNClassifier(**hyper)
    if family == "GBT":
        return GradientBoostedTrees(seed=seed, **hyper)
    if family == "ADA":
        return AdaBoostStumps(**hyper)
    raise ValidationError(f"unknown model family {family!r}")


def train(family: str, train_ds: Dataset, hyper: dict | None = None, seed: int = 0) -> TrainedModel:
    if family not in FAMILIES:
        raise ValidationError(f"unknown model family {family!r}")
    est = _build_estimator(family, dict(hyper or {}), seed)
    est.fit(train_ds.matrix, train_ds.targets)
    converged = bool(getattr(est, "converged", True))
    return TrainedModel(family=family, hyper=dict(hyper or {}), estimator=est, converged=converged)


def feature_importance(
    model: TrainedModel,
    train_ds: Dataset,
    schema: FeatureSchema = DEFAULT_SCHEMA,
    seed: int = 0,
    n_repeats: int = 10,
) -> TrainedModel:
    """Attach a normalized ranking; returns a new TrainedModel carrying it."""
    if model.family in _INTRINSIC_IMPORTANCE:
        raw = model.estimator.raw_importance()
    else:
        raw = permutation_importance(model.estimator, train_ds.matrix, train_ds.targets, seed=seed, n_repeats=n_repeats)
    ranking = build_ranking(raw, schema, source=model.family)
    return replace(model, importance=ranking)
