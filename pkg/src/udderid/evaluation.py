"""Identification experiments: gallery/probe splits, randomized trials, and
rank-1 accuracy curves.

Two protocols: consecutive-day (enroll day-1 samples, probe day-2 samples)
and cross-collection (enroll every collection-1 sample of the cows present
in both collections, probe their collection-2 samples). Accuracy curves
draw `trials` random cow subsets per group size; each trial's seed derives
from (master_seed, n, trial index) via the stable hash in udderid.seeds, so
results are reproducible and schedule-independent.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from udderid.classifiers import FeatureVector, fit
from udderid.errors import ProtocolError
from udderid.seeds import rng_for, stable_seed


@dataclass(frozen=True)
class Sample:
    cow_id: str
    collection: int
    day: int
    features: FeatureVector


@dataclass(frozen=True)
class Dataset:
    samples: tuple

    def __post_init__(self):
        seen = set()
        for s in self.samples:
            key = (s.cow_id, s.collection, s.day)
            if key in seen:
                raise ValueError(f"duplicate sample {key}")
            seen.add(key)

    @property
    def layout(self) -> str:
        return self.samples[0].features.layout

    def cows(self) -> list:
        return sorted({s.cow_id for s in self.samples})


@dataclass(frozen=True)
class ReportEntry:
    algorithm: str
    layout: str
    n: int
    trials: int
    mean_accuracy: float
    std_accuracy: float
    seed: int


@dataclass(frozen=True)
class EvaluationReport:
    entries: tuple


def split_protocol(ds: Dataset, mode: str):
    """Return (gallery, probe) sample lists for the given protocol mode."""
    if mode == "consecutive-day":
        by_cow_coll = {}
        for s in ds.samples:
            by_cow_coll.setdefault((s.cow_id, s.collection), set()).add(s.day)
        for (cow, coll), days in sorted(by_cow_coll.items()):
            if days != {1, 2}:
                raise ProtocolError(
                    f"cow {cow} collection {coll} lacks a day "
                    f"{(({1, 2} - days) or {'?'}).pop()} sample"
                )
        gallery = [s for s in ds.samples if s.day == 1]
        probes = [s for s in ds.samples if s.day == 2]
    elif mode == "cross-collection":
        coll1 = {s.cow_id for s in ds.samples if s.collection == 1}
        coll2 = {s.cow_id for s in ds.samples if s.collection == 2}
        shared = coll1 & coll2
        if not shared:
            raise ProtocolError("no cows present in both collections")
        gallery = [s for s in ds.samples
                   if s.collection == 1 and s.cow_id in shared]
        probes = [s for s in ds.samples
                  if s.collection == 2 and s.cow_id in shared]
    else:
        raise ValueError(f"unknown protocol mode {mode!r}")
    return gallery, probes


def run_trial(gallery, probes, cow_subset, algorithm: str,
              hyperparams: dict | None, trial_seed: int) -> float:
    """Fit on the subset's gallery samples; rank-1 accuracy on its probes."""
    subset = set(cow_subset)
    if not subset:
        raise ProtocolError("empty cow subset")
    g = [(s.features, s.cow_id) for s in gallery if s.cow_id in subset]
    p = [s for s in probes if s.cow_id in subset]
    model = fit(algorithm, g, hyperparams, seed=trial_seed)
    correct = sum(1 for s in p if model.predict(s.features) == s.cow_id)
    return correct / len(p)


def accuracy_curve(ds: Dataset, algorithm: str, layout: str, n_values,
                   trials: int = 50, master_seed: int = 42,
                   mode: str = "consecutive-day",
                   hyperparams: dict | None = None) -> EvaluationReport:
    """Mean/std rank-1 accuracy over random cow subsets per group size."""
    if ds.layout != layout:
        raise ValueError(f"dataset layout {ds.layout} != requested {layout}")
    gallery, probes = split_protocol(ds, mode)
    eligible = sorted({s.cow_id for s in gallery}
                      & {s.cow_id for s in probes})
    entries = []
    for n in n_values:
        if n > len(eligible):
            raise ProtocolError(
                f"group size {n} exceeds the {len(eligible)} eligible cows"
            )
        accs = np.empty(trials)
        for t in range(trials):
            trial_seed = stable_seed(master_seed, n, t)
            subset = rng_for(master_seed, n, t).choice(
                eligible, size=n, replace=False
            )
            accs[t] = run_trial(gallery, probes, subset, algorithm,
                                hyperparams, trial_seed)
        entries.append(ReportEntry(
            algorithm=algorithm,
            layout=layout,
            n=int(n),
            trials=int(trials),
            mean_accuracy=float(accs.mean()),
            std_accuracy=float(accs.std()),
            seed=int(master_seed),
        ))
    return EvaluationReport(entries=tuple(entries))


REPORT_HEADER = ["algorithm", "layout", "n", "trials",
                 "mean_accuracy", "std_accuracy", "seed"]


def export_report(report: EvaluationReport, path) -> None:
    """CSV with one row per entry; accuracies at 6 decimal places."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(REPORT_HEADER)
        for e in report.entries:
            writer.writerow([
                e.algorithm, e.layout, e.n, e.trials,
                f"{e.mean_accuracy:.6f}", f"{e.std_accuracy:.6f}", e.seed,
            ])


def import_report(path) -> EvaluationReport:
    """Inverse of export_report (accuracies at CSV precision)."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        entries = tuple(
            ReportEntry(
                algorithm=row["algorithm"],
                layout=row["layout"],
                n=int(row["n"]),
                trials=int(row["trials"]),
                mean_accuracy=float(row["mean_accuracy"]),
                std_accuracy=float(row["std_accuracy"]),
                seed=int(row["seed"]),
            )
            for row in reader
        )
    return EvaluationReport(entries=entries)
