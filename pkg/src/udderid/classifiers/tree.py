"""CART decision tree (Gini impurity) and a bootstrap forest of them.

Trees grow until leaves are pure or indivisible. Candidate thresholds are
midpoints between consecutive distinct feature values; the best split is
chosen by strictly lower weighted Gini, scanning dimensions in ascending
index and thresholds in ascending value, so ties resolve to the lowest
dimension then the lowest threshold. Rows with value <= threshold go left.

The forest draws, per tree, a bootstrap resample of the gallery (same size,
with replacement) and considers floor(sqrt(d)) features per split (falling
back to all features when the sampled subset admits no split, so leaves
stay pure whenever possible). Prediction is majority vote over the trees'
leaf classes, ties to the lexicographically smallest cow-id.
"""

from __future__ import annotations

import math

import numpy as np

from udderid.classifiers.base import (
    Standardizer,
    TrainedModel,
    label_indices,
    prepare_gallery,
)
from udderid.seeds import rng_for

TREE_DEFAULTS = {"standardize": True}
FOREST_DEFAULTS = {"n_trees": 100, "standardize": True}


def _gini(counts: np.ndarray) -> float:
    total = counts.sum()
    p = counts / total
    return 1.0 - float((p * p).sum())


def _best_split(X, y, idx, dims, n_classes):
    """Lowest-cost (dim, threshold) over the given dims, or None."""
    n = len(idx)
    best = None
    best_cost = math.inf
    for dim in dims:
        vals = np.unique(X[idx, dim])
        if len(vals) < 2:
            continue
        for lo, hi in zip(vals[:-1], vals[1:]):
            thr = (lo + hi) / 2.0
            left = idx[X[idx, dim] <= thr]
            right = idx[X[idx, dim] > thr]
            lc = np.bincount(y[left], minlength=n_classes)
            rc = np.bincount(y[right], minlength=n_classes)
            cost = (len(left) * _gini(lc) + len(right) * _gini(rc)) / n
            if cost < best_cost:
                best_cost = cost
                best = (int(dim), float(thr))
    return best


def _grow(X, y, idx, n_classes, label_set, feature_picker):
    counts = np.bincount(y[idx], minlength=n_classes)
    if np.count_nonzero(counts) == 1:
        return {"leaf": _counts_dict(counts, label_set)}

    dims = feature_picker(X.shape[1])
    split = _best_split(X, y, idx, dims, n_classes)
    if split is None and len(dims) < X.shape[1]:
        split = _best_split(X, y, idx, range(X.shape[1]), n_classes)
    if split is None:  # indivisible: identical rows with mixed labels
        return {"leaf": _counts_dict(counts, label_set)}

    dim, thr = split
    left = idx[X[idx, dim] <= thr]
    right = idx[X[idx, dim] > thr]
    return {
        "dim": dim,
        "thr": thr,
        "left": _grow(X, y, left, n_classes, label_set, feature_picker),
        "right": _grow(X, y, right, n_classes, label_set, feature_picker),
    }


def _counts_dict(counts: np.ndarray, label_set) -> dict:
    return {label_set[i]: int(c) for i, c in enumerate(counts) if c > 0}


def _leaf_for(node: dict, x: np.ndarray) -> dict:
    while "leaf" not in node:
        node = node["left"] if x[node["dim"]] <= node["thr"] else node["right"]
    return node["leaf"]


def _leaf_scores(leaf: dict, label_set) -> np.ndarray:
    total = sum(leaf.values())
    return np.array([leaf.get(lab, 0) / total for lab in label_set])


def _leaf_top_label(leaf: dict) -> str:
    return min(leaf, key=lambda lab: (-leaf[lab], lab))


class TreeModel(TrainedModel):
    algorithm = "tree"

    def __init__(self, layout, labels, standardizer, root):
        super().__init__(layout, labels, standardizer)
        self.root = root

    def _scores(self, x: np.ndarray) -> np.ndarray:
        return _leaf_scores(_leaf_for(self.root, x), self.label_set)

    def _params_dict(self) -> dict:
        return {"root": self.root}

    @classmethod
    def _from_params(cls, layout, labels, standardizer, params):
        return cls(layout, labels, standardizer, params["root"])


class ForestModel(TrainedModel):
    algorithm = "forest"

    def __init__(self, layout, labels, standardizer, roots):
        super().__init__(layout, labels, standardizer)
        self.roots = roots

    def _scores(self, x: np.ndarray) -> np.ndarray:
        votes = np.zeros(len(self.label_set))
        pos = {lab: i for i, lab in enumerate(self.label_set)}
        for root in self.roots:
            votes[pos[_leaf_top_label(_leaf_for(root, x))]] += 1
        return votes

    def _params_dict(self) -> dict:
        return {"roots": self.roots}

    @classmethod
    def _from_params(cls, layout, labels, standardizer, params):
        return cls(layout, labels, standardizer, params["roots"])


def fit_tree(gallery, hyperparams, seed) -> TreeModel:
    hp = {**TREE_DEFAULTS, **(hyperparams or {})}
    layout, X, labels = prepare_gallery(gallery)
    std = Standardizer.fit(X) if hp["standardize"] else Standardizer.identity(X.shape[1])
    Xs = std.transform(X)
    label_set = tuple(sorted(set(labels)))
    y = label_indices(labels, label_set)
    root = _grow(Xs, y, np.arange(len(labels)), len(label_set), label_set,
                 feature_picker=range)
    return TreeModel(layout, label_set, std, root)


def fit_forest(gallery, hyperparams, seed) -> ForestModel:
    hp = {**FOREST_DEFAULTS, **(hyperparams or {})}
    layout, X, labels = prepare_gallery(gallery)
    std = Standardizer.fit(X) if hp["standardize"] else Standardizer.identity(X.shape[1])
    Xs = std.transform(X)
    label_set = tuple(sorted(set(labels)))
    y = label_indices(labels, label_set)
    n, d = Xs.shape
    m = max(1, math.isqrt(d))

    roots = []
    for t in range(int(hp["n_trees"])):
        rng = rng_for(seed, "forest-tree", t)
        boot = rng.integers(0, n, size=n)

        def picker(n_dims, rng=rng):
            return np.sort(rng.permutation(n_dims)[:m])

        roots.append(
            _grow(Xs[boot], y[boot], np.arange(n), len(label_set), label_set,
                  feature_picker=picker)
        )
    return ForestModel(layout, label_set, std, roots)
