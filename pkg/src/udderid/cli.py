"""Command-line surface.

    udderid extract        manifest(s) -> feature CSV
    udderid evaluate       manifest(s) -> accuracy-curve report CSV
    udderid enroll         fit a classifier on gallery samples -> model JSON
    udderid identify       rank probes against an enrolled model
    udderid synth          seeded synthetic herd -> manifests/annotations
    udderid annotate-serve local annotation server + UI

Every command echoes its effective configuration (seed included); rerunning
with that configuration reproduces the outputs exactly.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from udderid import dataset_io, synthetic
from udderid.classifiers import ALGORITHMS, LAYOUTS, fit, load_model, save_model
from udderid.errors import UdderIdError
from udderid.evaluation import EvaluationReport, accuracy_curve, export_report

DEFAULT_SEED = 42
DEFAULT_GROUP_SIZES = (2, 5, 10, 15, 20, 30, 40, 50, 75)


def _echo_config(command: str, **kwargs) -> None:
    print(f"config {command}: "
          + json.dumps(kwargs, default=str, sort_keys=True))


def _load_manifests(paths):
    return [dataset_io.load_manifest(p) for p in paths]


def cmd_extract(args) -> int:
    _echo_config("extract", manifests=args.manifest, layout=args.layout,
                 normalize=args.normalize, out=args.out)
    manifests = _load_manifests(args.manifest)
    samples = []
    failures = []
    from udderid.evaluation import Dataset, Sample

    for m in manifests:
        for e in m.entries:
            sid = f"collection {m.collection} cow {e.cow_id} day {e.day}"
            try:
                fv = dataset_io.extract_entry_features(
                    e, args.layout, normalize=args.normalize
                )
                samples.append(Sample(e.cow_id, m.collection, e.day, fv))
            except Exception as exc:
                failures.append(f"{sid}: {exc}")
    if failures:
        for line in failures:
            print(f"error: {line}", file=sys.stderr)
        return 1
    dataset_io.export_features(Dataset(tuple(samples)), args.layout, args.out)
    print(f"wrote {len(samples)} samples to {args.out}")
    return 0


def cmd_evaluate(args) -> int:
    algorithms = list(ALGORITHMS) if args.algorithm == "all" else [args.algorithm]
    n_values = args.group_sizes
    _echo_config("evaluate", manifests=args.manifest, algorithm=args.algorithm,
                 layout=args.layout, group_sizes=n_values, trials=args.trials,
                 seed=args.seed, mode=args.mode, normalize=args.normalize,
                 out=args.out)
    manifests = _load_manifests(args.manifest)
    ds = dataset_io.extract_dataset(manifests, args.layout,
                                    normalize=args.normalize)
    if n_values is None:
        eligible = len(ds.cows())
        n_values = [n for n in DEFAULT_GROUP_SIZES if n <= eligible]
        print(f"group sizes defaulted to {n_values} ({eligible} eligible cows)")
    entries = []
    for algo in algorithms:
        report = accuracy_curve(ds, algo, args.layout, n_values,
                                trials=args.trials, master_seed=args.seed,
                                mode=args.mode)
        entries.extend(report.entries)
        for e in report.entries:
            print(f"{algo} n={e.n}: mean {e.mean_accuracy:.4f} "
                  f"std {e.std_accuracy:.4f}")
    export_report(EvaluationReport(tuple(entries)), args.out)
    print(f"wrote {len(entries)} report rows to {args.out}")
    return 0


def cmd_enroll(args) -> int:
    _echo_config("enroll", manifests=args.manifest, algorithm=args.algorithm,
                 layout=args.layout, day=args.day, seed=args.seed,
                 normalize=args.normalize, out=args.out)
    manifests = _load_manifests(args.manifest)
    ds = dataset_io.extract_dataset(manifests, args.layout,
                                    normalize=args.normalize)
    gallery = [(s.features, s.cow_id) for s in ds.samples if s.day == args.day]
    if not gallery:
        print(f"error: no day-{args.day} samples to enroll", file=sys.stderr)
        return 1
    model = fit(args.algorithm, gallery, None, seed=args.seed)
    save_model(model, args.out)
    print(f"enrolled {len(model.label_set)} cows "
          f"({len(gallery)} samples) into {args.out}")
    return 0


def cmd_identify(args) -> int:
    _echo_config("identify", model=args.model, manifests=args.manifest,
                 day=args.day, normalize=args.normalize, out=args.out)
    model = load_model(args.model)
    manifests = _load_manifests(args.manifest)
    ds = dataset_io.extract_dataset(manifests, model.layout,
                                    normalize=args.normalize)
    probes = [s for s in ds.samples if s.day == args.day]
    if not probes:
        print(f"error: no day-{args.day} probe samples", file=sys.stderr)
        return 1
    correct = 0
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["cow_id", "collection", "day", "predicted", "hit",
                         "ranking"])
        for s in probes:
            ranking = model.rank(s.features)
            hit = int(ranking[0] == s.cow_id)
            correct += hit
            writer.writerow([s.cow_id, s.collection, s.day, ranking[0], hit,
                             "|".join(ranking)])
    print(f"rank-1 accuracy {correct / len(probes):.4f} "
          f"({correct}/{len(probes)} probes); wrote {args.out}")
    return 0


def cmd_synth(args) -> int:
    if args.count < 1:
        print("error: --count must be >= 1", file=sys.stderr)
        return 1
    _echo_config("synth", count=args.count, collections=args.collections,
                 center_jitter=args.center_jitter, box_jitter=args.box_jitter,
                 scale_jitter=args.scale_jitter, drift=args.drift,
                 seed=args.seed, render=args.render, out_dir=args.out_dir)
    herd = synthetic.generate_herd(args.count, master_seed=args.seed)
    noise = synthetic.NoiseModel(
        center_jitter=args.center_jitter,
        dim_jitter=args.box_jitter,
        scale_jitter=args.scale_jitter,
        drift=args.drift,
    )
    collections = tuple(range(1, args.collections + 1))
    paths = synthetic.write_synthetic_dataset(
        args.out_dir, herd, noise, collections=collections, seed=args.seed,
        render=args.render,
    )
    for p in paths:
        print(f"wrote {p}")
    return 0


def cmd_annotate_serve(args) -> int:
    _echo_config("annotate-serve", manifest=args.manifest, port=args.port)
    from udderid import server

    manifest = dataset_io.load_manifest(args.manifest)
    ui_dir = server.UI_DIR if args.ui_dir is None else args.ui_dir
    server.serve_forever(manifest, args.port, ui_dir)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="udderid",
        description="Dairy-cow biometric identification from NIR udder images",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ext = sub.add_parser("extract", help="extract features to CSV")
    p_ext.add_argument("--manifest", action="append", required=True)
    p_ext.add_argument("--layout", choices=sorted(LAYOUTS),
                       default="geometry-17")
    p_ext.add_argument("--normalize", action="store_true",
                       help="scale-normalize geometric distances/sizes")
    p_ext.add_argument("--out", required=True)
    p_ext.set_defaults(func=cmd_extract)

    p_eval = sub.add_parser("evaluate", help="run accuracy curves")
    p_eval.add_argument("--manifest", action="append", required=True)
    p_eval.add_argument("--algorithm", choices=ALGORITHMS + ("all",),
                        default="all")
    p_eval.add_argument("--layout", choices=sorted(LAYOUTS),
                        default="geometry-17")
    p_eval.add_argument("--group-sizes", type=_int_list, default=None,
                        help="comma-separated n values (default: spans "
                             "2..75, trimmed to the dataset)")
    p_eval.add_argument("--trials", type=int, default=50)
    p_eval.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_eval.add_argument("--mode",
                        choices=("consecutive-day", "cross-collection"),
                        default="consecutive-day")
    p_eval.add_argument("--normalize", action="store_true")
    p_eval.add_argument("--out", required=True)
    p_eval.set_defaults(func=cmd_evaluate)

    p_enr = sub.add_parser("enroll", help="fit and save a gallery model")
    p_enr.add_argument("--manifest", action="append", required=True)
    p_enr.add_argument("--algorithm", choices=ALGORITHMS, default="knn")
    p_enr.add_argument("--layout", choices=sorted(LAYOUTS),
                       default="geometry-17")
    p_enr.add_argument("--day", type=int, choices=(1, 2), default=1,
                       help="session day to enroll as the gallery")
    p_enr.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_enr.add_argument("--normalize", action="store_true")
    p_enr.add_argument("--out", required=True)
    p_enr.set_defaults(func=cmd_enroll)

    p_id = sub.add_parser("identify", help="rank probes against a model")
    p_id.add_argument("--model", required=True)
    p_id.add_argument("--manifest", action="append", required=True)
    p_id.add_argument("--day", type=int, choices=(1, 2), default=2,
                      help="session day to use as probes")
    p_id.add_argument("--normalize", action="store_true")
    p_id.add_argument("--out", required=True)
    p_id.set_defaults(func=cmd_identify)

    p_syn = sub.add_parser("synth", help="generate a synthetic herd dataset")
    p_syn.add_argument("--count", type=int, default=75)
    p_syn.add_argument("--collections", type=int, choices=(1, 2), default=1)
    p_syn.add_argument("--center-jitter", type=float, default=1.0)
    p_syn.add_argument("--box-jitter", type=float, default=0.02)
    p_syn.add_argument("--scale-jitter", type=float, default=0.02)
    p_syn.add_argument("--drift", type=float, default=1.0)
    p_syn.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_syn.add_argument("--render", action="store_true",
                       help="also render PNG frames")
    p_syn.add_argument("--out-dir", required=True)
    p_syn.set_defaults(func=cmd_synth)

    p_srv = sub.add_parser("annotate-serve", help="serve the annotation UI")
    p_srv.add_argument("--manifest", required=True)
    p_srv.add_argument("--port", type=int, default=8077)
    p_srv.add_argument("--ui-dir", default=None)
    p_srv.set_defaults(func=cmd_annotate_serve)
    return parser


def _int_list(text: str) -> list:
    return [int(v) for v in text.split(",") if v.strip()]


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UdderIdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
