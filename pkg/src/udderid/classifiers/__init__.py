"""Five from-scratch classifiers behind one fit/rank/predict surface."""

from __future__ import annotations

import json

from udderid.classifiers.base import (
    ALGORITHMS,
    LAYOUTS,
    MODEL_SCHEMA,
    FeatureVector,
    Standardizer,
    TrainedModel,
)
from udderid.classifiers.knn import KnnModel, fit_knn
from udderid.classifiers.linear import LogRegModel, SvmModel, fit_logreg, fit_svm
from udderid.classifiers.tree import ForestModel, TreeModel, fit_forest, fit_tree

_FITTERS = {
    "knn": fit_knn,
    "logreg": fit_logreg,
    "svm": fit_svm,
    "tree": fit_tree,
    "forest": fit_forest,
}

_MODEL_CLASSES = {
    "knn": KnnModel,
    "logreg": LogRegModel,
    "svm": SvmModel,
    "tree": TreeModel,
    "forest": ForestModel,
}


def fit(algorithm: str, gallery, hyperparams: dict | None = None,
        seed: int = 0) -> TrainedModel:
    """Fit one of knn/logreg/svm/tree/forest on (FeatureVector, cow-id) pairs."""
    if algorithm not in _FITTERS:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {ALGORITHMS}")
    return _FITTERS[algorithm](gallery, hyperparams, seed)


def rank(model: TrainedModel, probe: FeatureVector) -> list:
    """Enrolled cow-ids ordered best-first for the probe."""
    return model.rank(probe)


def predict(model: TrainedModel, probe: FeatureVector) -> str:
    """Top-ranked cow-id."""
    return model.predict(probe)


def model_to_json(model: TrainedModel) -> str:
    return json.dumps(model.to_dict())


def model_from_json(text: str) -> TrainedModel:
    doc = json.loads(text)
    if doc.get("schema") != MODEL_SCHEMA:
        raise ValueError(f"unsupported model schema {doc.get('schema')!r}")
    cls = _MODEL_CLASSES[doc["algorithm"]]
    return cls._from_params(
        doc["layout"],
        doc["labels"],
        Standardizer.from_dict(doc["standardizer"]),
        doc["params"],
    )


def save_model(model: TrainedModel, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(model_to_json(model))


def load_model(path) -> TrainedModel:
    with open(path, "r", encoding="utf-8") as fh:
        return model_from_json(fh.read())


__all__ = [
    "ALGORITHMS",
    "LAYOUTS",
    "FeatureVector",
    "Standardizer",
    "TrainedModel",
    "fit",
    "rank",
    "predict",
    "model_to_json",
    "model_from_json",
    "save_model",
    "load_model",
]
