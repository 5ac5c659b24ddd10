"""Small fully-connected network for binary classification, trained full-batch.

Hidden layers use one activation throughout; the output is a single sigmoid
unit trained on cross-entropy with L2 penalty alpha (scaled by 1/n like the
loss). Two optimizers: "sgd" (gradient descent with momentum 0.9, supports
the constant / invscaling / adaptive step schedules) and "adam". Weight init
is Glorot uniform from a seeded generator, so fits are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import ValidationError

_ACTIVATIONS = {
    "relu": (lambda z: np.maximum(z, 0), lambda z, a: (z > 0).astype(float)),
    "tanh": (np.tanh, lambda z, a: 1 - a**2),
    "logistic": (lambda z: 1.0 / (1.0 + np.exp(-np.clip(z, -500, 500))), lambda z, a: a * (1 - a)),
}


@dataclass
class MLPClassifier:
    hidden_layer_sizes: tuple[int, ...] = (100,)
    activation: str = "relu"
    solver: str = "adam"  # "sgd" or "adam"
    alpha: float = 1e-4
    learning_rate: str = "constant"  # sgd only: constant | invscaling | adaptive
    learning_rate_init: float = 0.001
    tol: float = 1e-4
    max_iter: int = 200
    seed: int = 0

    weights: list[np.ndarray] = field(default_factory=list, repr=False)
    biases: list[np.ndarray] = field(default_factory=list, repr=False)
    converged: bool = False
    loss_curve_: list[float] = field(default_factory=list, repr=False)

    def _check(self):
        if self.activation not in _ACTIVATIONS:
            raise ValidationError(f"unknown activation {self.activation!r}")
        if self.solver not in ("sgd", "adam"):
            raise ValidationError(f"unknown solver {self.solver!r}")
        if self.learning_rate not in ("constant", "invscaling", "adaptive"):
            raise ValidationError(f"unknown learning_rate schedule {self.learning_rate!r}")
        if any(h < 1 for h in self.hidden_layer_sizes):
            raise ValidationError("hidden layer sizes must be >= 1")
        if self.max_iter < 1 or self.learning_rate_init <= 0 or self.alpha < 0:
            raise ValidationError("bad optimizer settings")

    def fit(self, X: np.ndarray, y: np.ndarray):
        self._check()
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=float)
        if not np.isin(y, (0.0, 1.0)).all():
            raise ValidationError("labels must be 0/1")
        n, d = X.shape
        sizes = [d, *self.hidden_layer_sizes, 1]
        rng = np.random.default_rng(self.seed)
        self.weights = []
        self.biases = []
        for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
            bound = np.sqrt(6.0 / (fan_in + fan_out))
            self.weights.append(rng.uniform(-bound, bound, size=(fan_in, fan_out)))
            self.biases.append(np.zeros(fan_out))

        act, act_grad = _ACTIVATIONS[self.activation]
        vel_w = [np.zeros_like(w) for w in self.weights]
        vel_b = [np.zeros_like(b) for b in self.biases]
        m_w = [np.zeros_like(w) for w in self.weights]
        v_w = [np.zeros_like(w) for w in self.weights]
        m_b = [np.zeros_like(b) for b in self.biases]
        v_b = [np.zeros_like(b) for b in self.biases]
        beta1, beta2, eps = 0.9, 0.999, 1e-8

        lr = self.learning_rate_init
        best_loss = np.inf
        no_improve = 0
        self.converged = False
        self.loss_curve_ = []

        for t in range(1, self.max_iter + 1):
            # forward
            acts = [X]
            zs = []
            for li, (W, b) in enumerate(zip(self.weights, self.biases)):
                z = acts[-1] @ W + b
                zs.append(z)
                if li < len(self.weights) - 1:
                    acts.append(act(z))
                else:
                    acts.append(1.0 / (1.0 + np.exp(-np.clip(z, -500, 500))))
            p = acts[-1].ravel()

            epsl = 1e-10
            loss = float(-(y * np.log(p + epsl) + (1 - y) * np.log(1 - p + epsl)).mean())
            loss += 0.5 * self.alpha * sum(float((W**2).sum()) for W in self.weights) / n
            self.loss_curve_.append(loss)

            if loss < best_loss - self.tol:
                best_loss = loss
                no_improve = 0
            else:
                no_improve += 1
                if no_improve >= 10:
                    if self.solver == "sgd" and self.learning_rate == "adaptive" and lr > 1e-6:
                        lr /= 5.0
                        no_improve = 0
                    else:
                        self.converged = True
                        break

            # backward
            delta = (p - y)[:, None] / n  # dL/dz at the output
            grads_w = [None] * len(self.weights)
            grads_b = [None] * len(self.biases)
            for li in range(len(self.weights) - 1, -1, -1):
                grads_w[li] = acts[li].T @ delta + self.alpha * self.weights[li] / n
                grads_b[li] = delta.sum(axis=0)
                if li > 0:
                    delta = (delta @ self.weights[li].T) * act_grad(zs[li - 1], acts[li])

            if self.solver == "sgd":
                step = lr
                if self.learning_rate == "invscaling":
                    step = self.learning_rate_init / np.sqrt(t)
                for li in range(len(self.weights)):
                    vel_w[li] = 0.9 * vel_w[li] - step * grads_w[li]
                    vel_b[li] = 0.9 * vel_b[li] - step * grads_b[li]
                    self.weights[li] = self.weights[li] + vel_w[li]
                    self.biases[li] = self.biases[li] + vel_b[li]
            else:
                for li in range(len(self.weights)):
                    m_w[li] = beta1 * m_w[li] + (1 - beta1) * grads_w[li]
                    v_w[li] = beta2 * v_w[li] + (1 - beta2) * grads_w[li] ** 2
                    m_b[li] = beta1 * m_b[li] + (1 - beta1) * grads_b[li]
                    v_b[li] = beta2 * v_b[li] + (1 - beta2) * grads_b[li] ** 2
                    mh_w = m_w[li] / (1 - beta1**t)
                    vh_w = v_w[li] / (1 - beta2**t)
                    mh_b = m_b[li] / (1 - beta1**t)
                    vh_b = v_b[li] / (1 - beta2**t)
                    self.weights[li] = self.weights[li] - lr * mh_w / (np.sqrt(vh_w) + eps)
                    self.biases[li] = self.biases[li] - lr * mh_b / (np.sqrt(vh_b) + eps)
        return self

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        if not self.weights:
            raise ValidationError("model not fitted")
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X[None, :]
        if X.shape[1] != self.weights[0].shape[0]:
            raise ValidationError(f"expected {self.weights[0].shape[0]} features, got {X.shape[1]}")
        act, _ = _ACTIVATIONS[self.activation]
        a = X
        for li, (W, b) in enumerate(zip(self.weights, self.biases)):
            z = a @ W + b
            a = act(z) if li < len(self.weights) - 1 else 1.0 / (1.0 + np.exp(-np.clip(z, -500, 500)))
        return a.ravel()

    def predict(self, X: np.ndarray) -> np.ndarray:
        return (self.predict_proba(X) >= 0.5).astype(int)  # tie at 0.5 predicts 1
