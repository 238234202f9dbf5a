"""Shared classifier machinery: feature vectors, standardization, the
TrainedModel contract, fit dispatch, and JSON model serialization.

All five algorithms share one discipline: the gallery is canonically sorted
by (cow-id, insertion index) before any seeded shuffling or resampling, the
standardizer is fitted on the gallery (mean 0, std 1 per dimension;
zero-variance dimensions pass through), and rank() returns a deterministic
full ordering of the enrolled labels with score ties broken by
lexicographic cow-id.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from udderid.errors import (
    EmptyGalleryError,
    LayoutMismatchError,
    NonFiniteFeatureError,
)

LAYOUTS = {"geometry-17": 17, "texture-72": 72, "combined-89": 89}

ALGORITHMS = ("knn", "logreg", "svm", "tree", "forest")

MODEL_SCHEMA = 1


@dataclass(frozen=True)
class FeatureVector:
    """Numeric descriptor of one sample with a declared layout."""

    values: np.ndarray
    layout: str

    def __post_init__(self):
        if self.layout not in LAYOUTS:
            raise LayoutMismatchError(f"unknown layout {self.layout!r}")
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.shape != (LAYOUTS[self.layout],):
            raise LayoutMismatchError(
                f"layout {self.layout} expects {LAYOUTS[self.layout]} values, "
                f"got shape {vals.shape}"
            )
        if not np.all(np.isfinite(vals)):
            raise NonFiniteFeatureError("feature vector contains NaN/inf")
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class Standardizer:
    """Per-dimension affine transform fitted on the gallery."""

    mean: np.ndarray
    std: np.ndarray

    @classmethod
    def fit(cls, X: np.ndarray) -> "Standardizer":
        mean = X.mean(axis=0)
        std = X.std(axis=0)  # population std; constant dims pass through
        std = np.where(std == 0.0, 1.0, std)
        return cls(mean=mean, std=std)

    @classmethod
    def identity(cls, dim: int) -> "Standardizer":
        return cls(mean=np.zeros(dim), std=np.ones(dim))

    def transform(self, X: np.ndarray) -> np.ndarray:
        return (X - self.mean) / self.std

    def to_dict(self) -> dict:
        return {"mean": self.mean.tolist(), "std": self.std.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "Standardizer":
        return cls(mean=np.array(d["mean"]), std=np.array(d["std"]))


class TrainedModel:
    """Immutable fitted classifier over an enrolled gallery."""

    algorithm: str

    def __init__(self, layout: str, labels, standardizer: Standardizer):
        self.layout = layout
        self.label_set = tuple(sorted(labels))
        self.standardizer = standardizer

    def _check_probe(self, probe: FeatureVector) -> np.ndarray:
        if probe.layout != self.layout:
            raise LayoutMismatchError(
                f"probe layout {probe.layout} != model layout {self.layout}"
            )
        return self.standardizer.transform(probe.values)

    def _scores(self, x: np.ndarray) -> np.ndarray:
        """Score per label in label_set order; higher is better."""
        raise NotImplementedError

    def rank(self, probe: FeatureVector) -> list:
        """All enrolled cow-ids, best first; ties broken lexicographically."""
        x = self._check_probe(probe)
        scores = self._scores(x)
        order = sorted(range(len(self.label_set)),
                       key=lambda i: (-scores[i], self.label_set[i]))
        return [self.label_set[i] for i in order]

    def predict(self, probe: FeatureVector):
        return self.rank(probe)[0]

    def _params_dict(self) -> dict:
        raise NotImplementedError

    def to_dict(self) -> dict:
        return {
            "schema": MODEL_SCHEMA,
            "algorithm": self.algorithm,
            "layout": self.layout,
            "labels": list(self.label_set),
            "standardizer": self.standardizer.to_dict(),
            "params": self._params_dict(),
        }


def prepare_gallery(gallery):
    """Validate and canonicalize the gallery.

    Rows are sorted by (cow-id, feature bytes, insertion index), a canonical
    order independent of input order (exact duplicates are interchangeable),
    so seed-driven shuffles and bootstraps are permutation invariant.
    """
    gallery = list(gallery)
    if not gallery:
        raise EmptyGalleryError("gallery is empty")
    layout = gallery[0][0].layout
    for fv, _ in gallery:
        if fv.layout != layout:
            raise LayoutMismatchError(
                f"inconsistent gallery layouts: {fv.layout} vs {layout}"
            )
    order = sorted(
        range(len(gallery)),
        key=lambda i: (str(gallery[i][1]), gallery[i][0].values.tobytes(), i),
    )
    X = np.stack([gallery[i][0].values for i in order])
    labels = [str(gallery[i][1]) for i in order]
    return layout, X, labels


def label_indices(labels, label_set) -> np.ndarray:
    """Map each sample label to its index in the sorted label set."""
    pos = {lab: i for i, lab in enumerate(label_set)}
    return np.array([pos[lab] for lab in labels], dtype=np.int64)
