"""Shared fixtures: reference importance orders, the three worked examples and
final query used in the golden prompt, and small dataset builders."""

from __future__ import annotations

import numpy as np
import pytest

from cardioprompt.data import Dataset, binarize_target, knn_impute, split, standardize
from cardioprompt.models.importance import ImportanceRanking
from cardioprompt.schema import DEFAULT_SCHEMA
from cardioprompt.synthetic import synthetic_raw

# descending-importance feature orders behind the six domain-knowledge texts
RF_ORDER = ("cp", "ca", "chol", "oldpeak", "exang", "thalach", "thal", "age", "slope", "trestbps", "sex", "fbs", "restecg")
LR_ORDER = ("cp", "oldpeak", "ca", "exang", "sex", "thal", "chol", "thalach", "fbs", "age", "slope", "restecg", "trestbps")
XGB_ORDER = ("exang", "cp", "sex", "ca", "oldpeak", "fbs", "slope", "thal", "chol", "thalach", "age", "trestbps", "restecg")

# worked in-context examples (feature vector, label) and the final query vector
EXAMPLE_1 = (np.array([57, 1, 2, 140, 265, 0, 1, 145, 1, 1, 2, 0.2, 5.8]), 1)
EXAMPLE_2 = (np.array([48, 1, 2, 130, 245, 0, 0, 160, 0, 0, 1.4, 0.2, 4.6]), 0)
EXAMPLE_3 = (np.array([44, 1, 4, 112, 290, 0, 2, 153, 0, 0, 1, 1, 3]), 1)
QUERY = np.array([46.0, 1.0, 3.0, 150.0, 163.0, 0.2, 0.0, 116.0, 0.0, 0.0, 2.2, 0.4, 6.2])

EXAMPLE_1_LINE = (
    "age: 57, sex: 1, cp: 2, trestbps: 140, chol: 265, fbs: 0, restecg: 1, "
    "thalach: 145, exang: 1, oldpeak: 1, slope: 2, ca: 0.2, thal: 5.8"
)


def make_ranking(order, source: str) -> ImportanceRanking:
    weights = np.linspace(0.4, 0.02, len(order))
    weights = weights / weights.sum()
    entries = tuple((name, float(w)) for name, w in zip(order, weights))
    return ImportanceRanking(entries=entries, source=source)


@pytest.fixture
def rf_ranking() -> ImportanceRanking:
    return make_ranking(RF_ORDER, "RF")


@pytest.fixture
def lr_ranking() -> ImportanceRanking:
    return make_ranking(LR_ORDER, "LR")


@pytest.fixture
def xgb_ranking() -> ImportanceRanking:
    return make_ranking(XGB_ORDER, "GBT")


def small_dataset(n: int = 60, seed: int = 0) -> Dataset:
    """Fully observed schema-shaped dataset with learnable labels."""
    raw = synthetic_raw(n_rows=n, missing_fraction=0.0, seed=seed)
    return knn_impute(binarize_target(raw), k=3)


@pytest.fixture(scope="session")
def prepared_small():
    """Split + standardized views of a 200-row synthetic dataset."""
    ds = small_dataset(200, seed=9)
    train, test = split(ds, 0.2, seed=4)
    std_train, std_test, scaler = standardize(train, test)
    return {"train": train, "test": test, "std_train": std_train, "std_test": std_test, "scaler": scaler}


def separable_1d(n_per_class: int = 10) -> Dataset:
    """13-feature dataset where feature 0 alone separates the classes."""
    X = np.zeros((2 * n_per_class, 13))
    X[:n_per_class, 0] = np.linspace(-2.0, -1.0, n_per_class)
    X[n_per_class:, 0] = np.linspace(1.0, 2.0, n_per_class)
    X[:, 1:] = np.random.default_rng(0).normal(0, 0.1, size=(2 * n_per_class, 12))
    y = np.array([0] * n_per_class + [1] * n_per_class)
    return Dataset(matrix=X, targets=y, schema=DEFAULT_SCHEMA)


def xor_dataset(reps: int = 15) -> Dataset:
    """Two informative features in XOR arrangement, padded to 13 columns."""
    base = np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]])
    X2 = np.tile(base, (reps, 1))
    rng = np.random.default_rng(1)
    X2 = X2 + rng.normal(0, 0.05, size=X2.shape)
    X = np.zeros((len(X2), 13))
    X[:, :2] = X2
    y = np.tile(np.array([0, 1, 1, 0]), reps)
    return Dataset(matrix=X, targets=y, schema=DEFAULT_SCHEMA)
