"""Linear models: multinomial logistic regression and a Pegasos-style
one-vs-rest linear SVM, both trained on standardized features.

Logistic regression: full-batch gradient descent on the mean cross-entropy
with L2 penalty (bias unregularized), zero-initialized, a fixed iteration
budget, no early stopping. SVM: per-class hinge objectives solved jointly
with the Pegasos schedule eta_t = 1/(lambda*t); one seeded shuffle sequence
is shared across the per-class problems each epoch, and the bias rides an
augmented constant column.
"""

from __future__ import annotations

import numpy as np

from udderid.classifiers.base import (
    Standardizer,
    TrainedModel,
    label_indices,
    prepare_gallery,
)
from udderid.seeds import rng_for

LOGREG_DEFAULTS = {
    "learning_rate": 0.5,
    "l2": 1e-3,
    "iterations": 2000,
    "standardize": True,
}

SVM_DEFAULTS = {"l2": 1e-3, "epochs": 2000, "standardize": True}


def _softmax(logits: np.ndarray) -> np.ndarray:
    z = logits - logits.max(axis=1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=1, keepdims=True)


class LogRegModel(TrainedModel):
    algorithm = "logreg"

    def __init__(self, layout, labels, standardizer, W, b):
        super().__init__(layout, labels, standardizer)
        self.W = W  # (d, C)
        self.b = b  # (C,)

    def _scores(self, x: np.ndarray) -> np.ndarray:
        return _softmax((x @ self.W + self.b)[None, :])[0]

    def _params_dict(self) -> dict:
        return {"weights": self.W.tolist(), "bias": self.b.tolist()}

    @classmethod
    def _from_params(cls, layout, labels, standardizer, params):
        return cls(layout, labels, standardizer,
                   np.array(params["weights"], dtype=np.float64),
                   np.array(params["bias"], dtype=np.float64))


def fit_logreg(gallery, hyperparams, seed) -> LogRegModel:
    hp = {**LOGREG_DEFAULTS, **(hyperparams or {})}
    layout, X, labels = prepare_gallery(gallery)
    std = Standardizer.fit(X) if hp["standardize"] else Standardizer.identity(X.shape[1])
    Xs = std.transform(X)

    label_set = tuple(sorted(set(labels)))
    y = label_indices(labels, label_set)
    n, d = Xs.shape
    C = len(label_set)
    Y = np.zeros((n, C))
    Y[np.arange(n), y] = 1.0

    W = np.zeros((d, C))
    b = np.zeros(C)
    lr, lam = float(hp["learning_rate"]), float(hp["l2"])
    for _ in range(int(hp["iterations"])):
        probs = _softmax(Xs @ W + b)
        err = (probs - Y) / n
        W -= lr * (Xs.T @ err + lam * W)
        b -= lr * err.sum(axis=0)
    return LogRegModel(layout, label_set, std, W, b)


class SvmModel(TrainedModel):
    algorithm = "svm"

    def __init__(self, layout, labels, standardizer, W):
        super().__init__(layout, labels, standardizer)
        self.W = W  # (C, d+1), last column is the bias

    def _scores(self, x: np.ndarray) -> np.ndarray:
        return self.W @ np.append(x, 1.0)

    def _params_dict(self) -> dict:
        return {"weights": self.W.tolist()}

    @classmethod
    def _from_params(cls, layout, labels, standardizer, params):
        return cls(layout, labels, standardizer,
                   np.array(params["weights"], dtype=np.float64))


def fit_svm(gallery, hyperparams, seed) -> SvmModel:
    hp = {**SVM_DEFAULTS, **(hyperparams or {})}
    layout, X, labels = prepare_gallery(gallery)
    std = Standardizer.fit(X) if hp["standardize"] else Standardizer.identity(X.shape[1])
    Xa = np.hstack([std.transform(X), np.ones((X.shape[0], 1))])

    label_set = tuple(sorted(set(labels)))
    y = label_indices(labels, label_set)
    n, d1 = Xa.shape
    C = len(label_set)
    # One-vs-rest targets in {-1, +1}, all classes updated per step.
    Y = -np.ones((n, C))
    Y[np.arange(n), y] = 1.0

    W = np.zeros((C, d1))
    lam = float(hp["l2"])
    rng = rng_for(seed, "svm-shuffle")
    t = 0
    for _ in range(int(hp["epochs"])):
        for i in rng.permutation(n):
            t += 1
            eta = 1.0 / (lam * t)
            x = Xa[i]
            margins = W @ x
            viol = Y[i] * margins < 1.0
            W *= 1.0 - 1.0 / t  # == (1 - eta*lam)
            if viol.any():
                W[viol] += eta * np.outer(Y[i, viol], x)
    return SvmModel(layout, label_set, std, W)
