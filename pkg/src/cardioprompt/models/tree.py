"""CART decision tree on numpy arrays, for standalone use and as the base
learner of the forest and boosting ensembles.

Split search is vectorized across all candidate features of a node: one
argsort per node plus prefix sums give every (feature, threshold) candidate
score in a handful of array ops. criterion "gini" grows a classifier on 0/1
labels; "mse" grows a regression tree on real-valued targets (used for
boosting residuals). Sample weights are respected in both impurities and leaf
values; min_samples_* limits count rows, not weight.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import ValidationError

_LEAF = -1


@dataclass
class DecisionTree:
    max_depth: int | None = None
    min_samples_split: int = 2
    min_samples_leaf: int = 1
    criterion: str = "gini"
    max_features: int | None = None  # per-node subset size; None = all
    rng: np.random.Generator | None = None  # only needed with max_features

    # flat node arrays, index 0 = root
    feature: list[int] = field(default_factory=list, repr=False)
    threshold: list[float] = field(default_factory=list, repr=False)
    left: list[int] = field(default_factory=list, repr=False)
    right: list[int] = field(default_factory=list, repr=False)
    value: list[float] = field(default_factory=list, repr=False)
    n_features_: int = 0
    importance_raw_: np.ndarray | None = field(default=None, repr=False)

    def fit(self, X: np.ndarray, y: np.ndarray, sample_weight: np.ndarray | None = None):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=float)
        if X.ndim != 2 or X.shape[0] != y.shape[0]:
            raise ValidationError("X must be 2-D and aligned with y")
        if self.criterion not in ("gini", "mse"):
            raise ValidationError(f"unknown criterion {self.criterion!r}")
        if self.criterion == "gini" and not np.isin(y, (0.0, 1.0)).all():
            raise ValidationError("gini criterion needs 0/1 labels")
        w = np.ones(len(y)) if sample_weight is None else np.asarray(sample_weight, dtype=float)
        if (w < 0).any() or w.sum() <= 0:
            raise ValidationError("sample weights must be nonnegative with positive sum")
        if self.max_features is not None and self.rng is None:
            raise ValidationError("max_features needs an rng for the per-node draw")

        self.n_features_ = X.shape[1]
        self.feature, self.threshold, self.left, self.right, self.value = [], [], [], [], []
        self.importance_raw_ = np.zeros(self.n_features_)
        self._build(X, y, w, np.arange(len(y)), depth=0)
        return self

    # impurity of a node given weighted label stats; both criteria return a
    # quantity whose weighted sum the split search minimizes
    def _leaf_value(self, y, w):
        return float(np.average(y, weights=w))

    def _node_impurity(self, y, w):
        mean = np.average(y, weights=w)
        if self.criterion == "gini":
            return 2.0 * mean * (1.0 - mean)
        return float(np.average((y - mean) ** 2, weights=w))

    def _new_node(self) -> int:
        self.feature.append(_LEAF)
        self.threshold.append(0.0)
        self.left.append(_LEAF)
        self.right.append(_LEAF)
        self.value.append(0.0)
        return len(self.feature) - 1

    def _build(self, X, y, w, idx: np.ndarray, depth: int) -> int:
        node = self._new_node()
        yn, wn = y[idx], w[idx]
        self.value[node] = self._leaf_value(yn, wn)
        m = len(idx)

        impurity = self._node_impurity(yn, wn)
        if (
            m < self.min_samples_split
            or m < 2 * self.min_samples_leaf
            or (self.max_depth is not None and depth >= self.max_depth)
            or impurity <= 1e-12
        ):
            return node

        cols = np.arange(self.n_features_)
        if self.max_features is not None and self.max_features < self.n_features_:
            cols = np.sort(self.rng.choice(self.n_features_, size=self.max_features, replace=False))

        best = self._best_split(X[np.ix_(idx, cols)], yn, wn)
        if best is None:
            return node
        col_local, thr, gain = best
        j = int(cols[col_local])

        go_left = X[idx, j] <= thr
        self.importance_raw_[j] += gain
        self.feature[node] = j
        self.threshold[node] = thr
        self.left[node] = self._build(X, y, w, idx[go_left], depth + 1)
        self.right[node] = self._build(X, y, w, idx[~go_left], depth + 1)
        return node

    def _best_split(self, Xn: np.ndarray, yn: np.ndarray, wn: np.ndarray):
        """Exact search over every (feature, midpoint threshold) candidate.

        Returns (local column, threshold, weighted impurity decrease) or None.
        """
        m, d = Xn.shape
        msl = self.min_samples_leaf

        order = np.argsort(Xn, axis=0, kind="stable")
        sv = np.take_along_axis(Xn, order, axis=0)
        sw = wn[order]
        swy = (wn * yn)[order]

        cw = np.cumsum(sw, axis=0)
        cwy = np.cumsum(swy, axis=0)
        tot_w = cw[-1]
        tot_wy = cwy[-1]

        # split after sorted position i (0-based): left = rows 0..i
        lw, lwy = cw[:-1], cwy[:-1]
        rw, rwy = tot_w - lw, tot_wy - lwy

        valid = sv[1:] > sv[:-1]
        if msl > 1:
            counts = np.arange(1, m)
            row_ok = (counts >= msl) & (m - counts >= msl)
            valid &= row_ok[:, None]
        if not valid.any():
            return None

        with np.errstate(divide="ignore", invalid="ignore"):
            if self.criterion == "gini":
                pl = np.where(lw > 0, lwy / np.maximum(lw, 1e-300), 0.0)
                pr = np.where(rw > 0, rwy / np.maximum(rw, 1e-300), 0.0)
                score = lw * 2 * pl * (1 - pl) + rw * 2 * pr * (1 - pr)
            else:
                # weighted SSE via sum(y^2) - (sum y)^2 / w per side
                cwyy = np.cumsum((wn * yn * yn)[order], axis=0)
                lyy, ryy = cwyy[:-1], cwyy[-1] - cwyy[:-1]
                score = (lyy - lwy**2 / np.maximum(lw, 1e-300)) + (ryy - rwy**2 / np.maximum(rw, 1e-300))

        score = np.where(valid, score, np.inf)
        flat = int(np.argmin(score))  # row-major: earliest position, then lowest column
        pos, col = divmod(flat, d)
        if not np.isfinite(score[pos, col]):
            return None

        parent = float(wn.sum()) * self._node_impurity(yn, wn)
        gain = float(parent - score[pos, col])
        if gain <= 1e-12:
            return None
        thr = float((sv[pos, col] + sv[pos + 1, col]) / 2.0)
        return col, thr, gain

    def predict_value(self, X: np.ndarray) -> np.ndarray:
        """Leaf value per row: class-1 probability (gini) or mean target (mse)."""
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X[None, :]
        if X.shape[1] != self.n_features_:
            raise ValidationError(f"expected {self.n_features_} features, got {X.shape[1]}")
        feature = np.asarray(self.feature)
        threshold = np.asarray(self.threshold)
        left = np.asarray(self.left)
        right = np.asarray(self.right)
        value = np.asarray(self.value)

        node = np.zeros(len(X), dtype=int)
        while True:
            active = feature[node] != _LEAF
            if not active.any():
                break
            rows = np.flatnonzero(active)
            cur = node[rows]
            go_left = X[rows, feature[cur]] <= threshold[cur]
            node[rows] = np.where(go_left, left[cur], right[cur])
        return value[node]

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        if self.criterion != "gini":
            raise ValidationError("probabilities only defined for the gini classifier")
        return self.predict_value(X)

    def predict(self, X: np.ndarray) -> np.ndarray:
        return (self.predict_proba(X) >= 0.5).astype(int)  # tie at 0.5 predicts 1
