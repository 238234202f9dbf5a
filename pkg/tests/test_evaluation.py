import numpy as np
import pytest

from udderid.classifiers import FeatureVector
from udderid.errors import ProtocolError
from udderid.evaluation import (
    Dataset,
    EvaluationReport,
    ReportEntry,
    Sample,
    accuracy_curve,
    export_report,
    import_report,
    run_trial,
    split_protocol,
)
from udderid.synthetic import NoiseModel, build_dataset, generate_herd


def fv(vals):
    v = np.zeros(17)
    v[: len(vals)] = vals
    return FeatureVector(v, "geometry-17")


def tiny_dataset(n_cows=4, collections=(1,), spread=10.0):
    """One distinct feature point per cow; day 2 equals day 1."""
    samples = []
    for coll in collections:
        for i in range(n_cows):
            for day in (1, 2):
                samples.append(Sample(f"cow{i}", coll, day,
                                      fv([spread * i, spread * (i % 3)])))
    return Dataset(tuple(samples))


class TestDataset:
    def test_duplicate_sample_rejected(self):
        s = Sample("c1", 1, 1, fv([1]))
        with pytest.raises(ValueError):
            Dataset((s, s))


class TestSplitProtocol:
    def test_consecutive_day_split(self):
        ds = tiny_dataset(2)
        gallery, probes = split_protocol(ds, "consecutive-day")
        assert len(gallery) == 2 and all(s.day == 1 for s in gallery)
        assert len(probes) == 2 and all(s.day == 2 for s in probes)

    def test_missing_day_errors(self):
        samples = [
            Sample("a", 1, 1, fv([1])),
            Sample("a", 1, 2, fv([1])),
            Sample("b", 1, 1, fv([2])),
        ]
        with pytest.raises(ProtocolError):
            split_protocol(Dataset(tuple(samples)), "consecutive-day")

    def test_cross_collection_shared_cows_only(self):
        samples = []
        for cow, colls in [("s1", (1, 2)), ("s2", (1, 2)), ("only1", (1,)),
                           ("only2", (2,))]:
            for coll in colls:
                for day in (1, 2):
                    samples.append(Sample(cow, coll, day, fv([hash(cow) % 7])))
        gallery, probes = split_protocol(Dataset(tuple(samples)),
                                         "cross-collection")
        assert {s.cow_id for s in gallery} == {"s1", "s2"}
        assert {s.cow_id for s in probes} == {"s1", "s2"}
        assert all(s.collection == 1 for s in gallery)
        assert all(s.collection == 2 for s in probes)
        # both day samples per cow per side: 2 cows x 2 days
        assert len(gallery) == 4 and len(probes) == 4

    def test_cross_collection_sample_counts_21_shared_cows(self):
        # 21 shared cows, 2 samples per cow per collection -> 42 + 42
        samples = []
        for i in range(21):
            for coll in (1, 2):
                for day in (1, 2):
                    samples.append(Sample(f"s{i:02d}", coll, day, fv([i])))
        gallery, probes = split_protocol(Dataset(tuple(samples)),
                                         "cross-collection")
        assert len(gallery) == 42
        assert len(probes) == 42

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            split_protocol(tiny_dataset(), "leave-one-out")


class TestRunTrial:
    def test_single_cow_accuracy_one(self):
        ds = tiny_dataset(3)
        gallery, probes = split_protocol(ds, "consecutive-day")
        assert run_trial(gallery, probes, ["cow1"], "knn", None, 0) == 1.0

    def test_probes_equal_gallery_perfect(self):
        ds = tiny_dataset(5)
        gallery, probes = split_protocol(ds, "consecutive-day")
        cows = [f"cow{i}" for i in range(5)]
        assert run_trial(gallery, probes, cows, "knn", None, 0) == 1.0

    def test_zero_noise_synthetic_all_algorithms(self):
        herd = generate_herd(12, master_seed=5)
        ds = build_dataset(herd, NoiseModel(0, 0, 0, 1.0), seed=6)
        gallery, probes = split_protocol(ds, "consecutive-day")
        cows = [t.cow_id for t in herd]
        for algo in ("knn", "logreg", "svm", "tree", "forest"):
            hp = {"n_trees": 20} if algo == "forest" else None
            acc = run_trial(gallery, probes, cows, algo, hp, 1)
            assert acc == 1.0, algo

    def test_empty_subset(self):
        ds = tiny_dataset(2)
        gallery, probes = split_protocol(ds, "consecutive-day")
        with pytest.raises(ProtocolError):
            run_trial(gallery, probes, [], "knn", None, 0)


class TestAccuracyCurve:
    def test_n1_mean_one_std_zero(self):
        ds = tiny_dataset(4)
        rep = accuracy_curve(ds, "knn", "geometry-17", [1], trials=10,
                             master_seed=3)
        e = rep.entries[0]
        assert e.mean_accuracy == 1.0
        assert e.std_accuracy == 0.0
        assert e.trials == 10

    def test_same_master_seed_identical_reports(self):
        herd = generate_herd(8, master_seed=2)
        ds = build_dataset(herd, NoiseModel(2.0, 0.05, 0.05, 1.0), seed=3)
        r1 = accuracy_curve(ds, "knn", "geometry-17", [2, 5], trials=8,
                            master_seed=99)
        r2 = accuracy_curve(ds, "knn", "geometry-17", [2, 5], trials=8,
                            master_seed=99)
        assert r1 == r2

    def test_full_count_subsets_identical_across_trials(self):
        ds = tiny_dataset(5)
        rep = accuracy_curve(ds, "knn", "geometry-17", [5], trials=4,
                             master_seed=1)
        assert rep.entries[0].std_accuracy == 0.0

    def test_group_size_too_large(self):
        ds = tiny_dataset(3)
        with pytest.raises(ProtocolError):
            accuracy_curve(ds, "knn", "geometry-17", [4], trials=2,
                           master_seed=0)

    def test_monotone_degradation_under_noise(self):
        herd = generate_herd(40, master_seed=77)
        ds = build_dataset(herd, NoiseModel(6.0, 0.05, 0.05, 1.0), seed=78)
        rep = accuracy_curve(ds, "knn", "geometry-17", [5, 40], trials=50,
                             master_seed=79)
        acc5 = rep.entries[0].mean_accuracy
        acc40 = rep.entries[1].mean_accuracy
        assert acc40 <= acc5 + 0.02

    def test_layout_mismatch(self):
        ds = tiny_dataset(3)
        with pytest.raises(ValueError):
            accuracy_curve(ds, "knn", "texture-72", [2], trials=2,
                           master_seed=0)


class TestReportCsv:
    def entry(self, **kw):
        defaults = dict(algorithm="knn", layout="geometry-17", n=5, trials=50,
                        mean_accuracy=0.8125, std_accuracy=0.0625, seed=42)
        defaults.update(kw)
        return ReportEntry(**defaults)

    def test_empty_report_header_only(self, tmp_path):
        path = tmp_path / "r.csv"
        export_report(EvaluationReport(()), path)
        lines = path.read_text().strip().splitlines()
        assert lines == ["algorithm,layout,n,trials,mean_accuracy,"
                         "std_accuracy,seed"]

    def test_single_entry_round_trip(self, tmp_path):
        path = tmp_path / "r.csv"
        report = EvaluationReport((self.entry(),))
        export_report(report, path)
        lines = path.read_text().strip().splitlines()
        assert len(lines) == 2
        assert lines[1] == "knn,geometry-17,5,50,0.812500,0.062500,42"
        assert import_report(path) == report

    def test_round_trip_at_csv_precision(self, tmp_path):
        path = tmp_path / "r.csv"
        report = EvaluationReport((
            self.entry(mean_accuracy=1 / 3, std_accuracy=2 / 7),
            self.entry(algorithm="svm", n=10, mean_accuracy=0.99,
                       std_accuracy=0.0),
        ))
        export_report(report, path)
        back = import_report(path)
        for got, want in zip(back.entries, report.entries):
            assert got.algorithm == want.algorithm
            assert got.n == want.n
            assert got.mean_accuracy == pytest.approx(want.mean_accuracy,
                                                      abs=1e-6)
            assert got.std_accuracy == pytest.approx(want.std_accuracy,
                                                     abs=1e-6)
