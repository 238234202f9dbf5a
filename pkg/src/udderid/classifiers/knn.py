"""Nearest-neighbor classifier over the standardized gallery.

Default k=1 (the consecutive-day protocol enrolls one sample per cow, so a
larger k cannot form a correct majority there). At k=1 the ranking is by
distance to the nearest gallery sample of each class; for k>1 the ranking
key is (votes among the k nearest, nearest-distance, cow-id).
"""

from __future__ import annotations

import numpy as np

from udderid.classifiers.base import (
    FeatureVector,
    Standardizer,
    TrainedModel,
    prepare_gallery,
)


class KnnModel(TrainedModel):
    algorithm = "knn"

    def __init__(self, layout, labels, standardizer, X, sample_labels, k):
        super().__init__(layout, set(sample_labels), standardizer)
        self.X = X
        self.sample_labels = list(sample_labels)
        self.k = k

    def _class_min_dists(self, x: np.ndarray) -> np.ndarray:
        dists = np.linalg.norm(self.X - x, axis=1)
        mins = np.full(len(self.label_set), np.inf)
        pos = {lab: i for i, lab in enumerate(self.label_set)}
        for d, lab in zip(dists, self.sample_labels):
            i = pos[lab]
            if d < mins[i]:
                mins[i] = d
        return mins

    def rank(self, probe: FeatureVector) -> list:
        x = self._check_probe(probe)
        mins = self._class_min_dists(x)
        if self.k <= 1:
            order = sorted(range(len(self.label_set)),
                           key=lambda i: (mins[i], self.label_set[i]))
            return [self.label_set[i] for i in order]
        dists = np.linalg.norm(self.X - x, axis=1)
        nearest = sorted(range(len(dists)),
                         key=lambda i: (dists[i], self.sample_labels[i], i))
        votes = {lab: 0 for lab in self.label_set}
        for i in nearest[: self.k]:
            votes[self.sample_labels[i]] += 1
        pos = {lab: i for i, lab in enumerate(self.label_set)}
        return sorted(self.label_set,
                      key=lambda lab: (-votes[lab], mins[pos[lab]], lab))

    def _scores(self, x: np.ndarray) -> np.ndarray:
        return -self._class_min_dists(x)

    def _params_dict(self) -> dict:
        return {
            "k": self.k,
            "gallery": [row.tolist() for row in self.X],
            "sample_labels": self.sample_labels,
        }

    @classmethod
    def _from_params(cls, layout, labels, standardizer, params):
        return cls(
            layout,
            labels,
            standardizer,
            np.array(params["gallery"], dtype=np.float64),
            params["sample_labels"],
            int(params["k"]),
        )


def fit_knn(gallery, hyperparams, seed) -> KnnModel:
    hp = {"k": 1, "standardize": True, **(hyperparams or {})}
    layout, X, labels = prepare_gallery(gallery)
    std = Standardizer.fit(X) if hp["standardize"] else Standardizer.identity(X.shape[1])
    return KnnModel(layout, labels, std, std.transform(X), labels, int(hp["k"]))
