import json

import numpy as np
import pytest

from udderid.classifiers import (
    ALGORITHMS,
    FeatureVector,
    Standardizer,
    fit,
    load_model,
    model_from_json,
    model_to_json,
    predict,
    rank,
    save_model,
)
from udderid.errors import (
    EmptyGalleryError,
    LayoutMismatchError,
    NonFiniteFeatureError,
)


def fv(vals, layout="geometry-17"):
    dim = {"geometry-17": 17, "texture-72": 72, "combined-89": 89}[layout]
    v = np.zeros(dim)
    v[: len(vals)] = vals
    return FeatureVector(v, layout)


def three_cluster_gallery(seed=0, per_class=20, radius=1.0):
    """Linearly separable clusters at (0,0), (10,0), (0,10)."""
    rng = np.random.default_rng(seed)
    gallery = []
    for label, cx, cy in [("a", 0, 0), ("b", 10, 0), ("c", 0, 10)]:
        for _ in range(per_class):
            gallery.append(
                (fv([cx + rng.uniform(-radius, radius),
                     cy + rng.uniform(-radius, radius)]), label)
            )
    return gallery


class TestFeatureVector:
    def test_layout_dimension_enforced(self):
        with pytest.raises(LayoutMismatchError):
            FeatureVector(np.zeros(16), "geometry-17")

    def test_non_finite_rejected(self):
        v = np.zeros(17)
        v[3] = np.nan
        with pytest.raises(NonFiniteFeatureError):
            FeatureVector(v, "geometry-17")

    def test_unknown_layout_rejected(self):
        with pytest.raises(LayoutMismatchError):
            FeatureVector(np.zeros(5), "five")


class TestStandardizer:
    def test_mean_zero_std_one(self):
        rng = np.random.default_rng(1)
        X = rng.uniform(-100, 100, (40, 17))
        std = Standardizer.fit(X)
        Z = std.transform(X)
        assert np.all(np.abs(Z.mean(axis=0)) < 1e-9)
        assert np.all(np.abs(Z.std(axis=0) - 1.0) < 1e-9)

    def test_constant_dimension_passthrough(self):
        X = np.ones((10, 3)) * 5.0
        X[:, 1] = np.arange(10)
        std = Standardizer.fit(X)
        Z = std.transform(X)
        assert np.all(Z[:, 0] == 0.0)  # (5 - 5) / 1
        assert np.all(np.abs(Z[:, 1].std() - 1.0) < 1e-9)


class TestFitContracts:
    def test_empty_gallery(self):
        with pytest.raises(EmptyGalleryError):
            fit("knn", [])

    def test_inconsistent_layout(self):
        gallery = [(fv([1]), "a"), (fv([1], layout="texture-72"), "b")]
        with pytest.raises(LayoutMismatchError):
            fit("knn", gallery)

    def test_unknown_algorithm(self):
        with pytest.raises(ValueError):
            fit("mlp", [(fv([1]), "a")])

    def test_knn_memorizes_single_samples(self):
        gallery = [(fv([0, 0]), "a"), (fv([5, 5]), "b"), (fv([9, 0]), "c")]
        model = fit("knn", gallery)
        for f, label in gallery:
            assert model.predict(f) == label

    def test_tree_pure_growth_100pct_training(self):
        rng = np.random.default_rng(2)
        gallery = [(fv(rng.uniform(0, 50, 5)), f"cow{i:02d}") for i in range(12)]
        model = fit("tree", gallery)
        assert all(model.predict(f) == lab for f, lab in gallery)

    @pytest.mark.parametrize("algo", ["logreg", "svm"])
    def test_linear_models_separate_three_clusters(self, algo):
        gallery = three_cluster_gallery()
        model = fit(algo, gallery, None, seed=3)
        acc = sum(model.predict(f) == lab for f, lab in gallery) / len(gallery)
        assert acc == 1.0

    def test_forest_fits_and_predicts_labels_from_gallery(self):
        gallery = three_cluster_gallery(per_class=5)
        model = fit("forest", gallery, {"n_trees": 25}, seed=4)
        for f, lab in gallery:
            assert model.predict(f) in {"a", "b", "c"}
        acc = sum(model.predict(f) == lab for f, lab in gallery) / len(gallery)
        assert acc >= 0.95


class TestRankContracts:
    def test_probe_equal_to_gallery_vector_ranks_first(self):
        gallery = [(fv([0, 0]), "a"), (fv([8, 1]), "b")]
        model = fit("knn", gallery)
        assert rank(model, fv([8, 1]))[0] == "b"

    def test_single_cow_gallery(self):
        model = fit("knn", [(fv([1, 2]), "only")])
        assert rank(model, fv([100, -3])) == ["only"]

    def test_equidistant_tie_lexicographic(self):
        gallery = [(fv([0, 1]), "zeb"), (fv([0, -1]), "ana")]
        model = fit("knn", gallery, {"standardize": False})
        assert rank(model, fv([0, 0])) == ["ana", "zeb"]

    def test_rank_is_full_ordering_of_label_set(self):
        gallery = three_cluster_gallery(per_class=3)
        for algo in ALGORITHMS:
            model = fit(algo, gallery, {"n_trees": 10} if algo == "forest" else None, 5)
            ranking = rank(model, fv([1, 1]))
            assert sorted(ranking) == ["a", "b", "c"]

    def test_layout_mismatch_on_rank(self):
        model = fit("knn", [(fv([1]), "a")])
        with pytest.raises(LayoutMismatchError):
            rank(model, fv([1], layout="texture-72"))

    def test_predict_is_first_of_rank(self):
        gallery = three_cluster_gallery(per_class=4)
        probe = fv([4, 6])
        for algo in ALGORITHMS:
            model = fit(algo, gallery, {"n_trees": 10} if algo == "forest" else None, 6)
            assert predict(model, probe) == rank(model, probe)[0]

    def test_knn_k3_majority(self):
        gallery = [
            (fv([0, 0]), "a"), (fv([0.2, 0]), "a"),
            (fv([1.0, 0]), "b"), (fv([5, 5]), "c"),
        ]
        model = fit("knn", gallery, {"k": 3, "standardize": False})
        assert predict(model, fv([0.3, 0])) == "a"


class TestDeterminism:
    @pytest.mark.parametrize("algo", ALGORITHMS)
    def test_identical_seed_identical_ranking(self, algo):
        gallery = three_cluster_gallery(per_class=6)
        hp = {"n_trees": 15} if algo == "forest" else None
        probes = [fv([3, 3]), fv([7, 1]), fv([-1, 9])]
        m1 = fit(algo, gallery, hp, seed=11)
        m2 = fit(algo, gallery, hp, seed=11)
        for p in probes:
            assert m1.rank(p) == m2.rank(p)

    @pytest.mark.parametrize("algo", ALGORITHMS)
    def test_gallery_permutation_invariance(self, algo):
        gallery = three_cluster_gallery(per_class=6)
        hp = {"n_trees": 15} if algo == "forest" else None
        shuffled = gallery[:]
        np.random.default_rng(8).shuffle(shuffled)
        m1 = fit(algo, gallery, hp, seed=11)
        m2 = fit(algo, shuffled, hp, seed=11)
        m3 = fit(algo, list(reversed(gallery)), hp, seed=11)
        for p in [fv([3, 3]), fv([0, 2]), fv([10, 10])]:
            assert m1.rank(p) == m2.rank(p) == m3.rank(p)

    def test_one_nn_training_set_consistency(self):
        rng = np.random.default_rng(9)
        gallery = [(fv(rng.uniform(0, 100, 17)), f"c{i:03d}") for i in range(40)]
        model = fit("knn", gallery)
        assert all(model.predict(f) == lab for f, lab in gallery)


class TestSerialization:
    @pytest.mark.parametrize("algo", ALGORITHMS)
    def test_json_round_trip_preserves_rankings(self, algo, tmp_path):
        gallery = three_cluster_gallery(per_class=5)
        hp = {"n_trees": 10} if algo == "forest" else None
        model = fit(algo, gallery, hp, seed=13)
        path = tmp_path / f"{algo}.json"
        save_model(model, path)
        loaded = load_model(path)
        assert loaded.algorithm == algo
        assert loaded.label_set == model.label_set
        for p in [fv([1, 2]), fv([9, 1]), fv([0, 11]), fv([5, 5])]:
            assert loaded.rank(p) == model.rank(p)

    def test_schema_version_checked(self):
        model = fit("knn", [(fv([1]), "a")])
        doc = json.loads(model_to_json(model))
        doc["schema"] = 99
        with pytest.raises(ValueError):
            model_from_json(json.dumps(doc))
