"""Persistence: dataset manifests, annotation files, feature extraction and
CSV export.

Manifest (JSON, schema 1): collection id plus one entry per (cow, day) with
the image path, the rotation/crop preprocessing parameters, and the
annotation path. Paths are stored relative to the manifest file. The image
path may be null for annotation-only (e.g. synthetic, unrendered) samples;
the annotation path is a target and need not exist until annotated.

Annotation (JSON, schema 1):
    { "schema": 1, "image": str,
      "udder_box": {x, y, w, h},
      "teats": [ {"position": "LF|RF|RR|LR", "box": {x, y, w, h}}, x4 ] }
all in preprocessed-image pixel coordinates. One shared format for the
human annotator UI, the synthetic generator, and this loader.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from udderid import imaging
from udderid.classifiers import LAYOUTS, FeatureVector
from udderid.errors import AnnotationError, ExtractionError, ManifestError
from udderid.evaluation import Dataset, Sample
from udderid.geometry import (
    POSITIONS,
    Box,
    TeatBox,
    UdderAnnotation,
    geometric_features,
)
from udderid.imaging import CropRect
from udderid.texture import texture_features

MANIFEST_SCHEMA = 1
ANNOTATION_SCHEMA = 1


@dataclass(frozen=True)
class ManifestEntry:
    cow_id: str
    day: int
    image: Path | None
    rotation_deg: float
    crop: CropRect | None
    annotation: Path


@dataclass(frozen=True)
class Manifest:
    collection: int
    entries: tuple
    base_dir: Path


def _require(doc: dict, key: str, context: str):
    if key not in doc:
        raise ManifestError("schema-violation", f"{context} missing field {key!r}")
    return doc[key]


def _box_from_dict(d: dict, context: str, error_cls) -> dict:
    try:
        return {k: float(d[k]) for k in ("x", "y", "w", "h")}
    except (KeyError, TypeError, ValueError) as exc:
        raise error_cls("schema-violation" if error_cls is ManifestError
                        else "parse-error",
                        f"{context} needs numeric x/y/w/h") from exc


def load_manifest(path) -> Manifest:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ManifestError("parse-error", f"{path}: {exc}") from exc

    if not isinstance(doc, dict):
        raise ManifestError("schema-violation", f"{path}: top level must be an object")
    if doc.get("schema") != MANIFEST_SCHEMA:
        raise ManifestError("schema-violation",
                            f"{path}: unsupported schema {doc.get('schema')!r}")
    collection = _require(doc, "collection", str(path))
    if collection not in (1, 2):
        raise ManifestError("schema-violation",
                            f"{path}: collection must be 1 or 2")

    base = path.parent
    entries = []
    seen = set()
    for i, raw in enumerate(_require(doc, "entries", str(path))):
        ctx = f"{path} entry {i}"
        cow_id = str(_require(raw, "cow_id", ctx))
        day = _require(raw, "day", ctx)
        if day not in (1, 2):
            raise ManifestError("schema-violation", f"{ctx}: day must be 1 or 2")
        if (cow_id, day) in seen:
            raise ManifestError("duplicate-entry",
                                f"{ctx}: duplicate (cow {cow_id}, day {day})")
        seen.add((cow_id, day))

        image_raw = _require(raw, "image", ctx)
        image = None
        crop = None
        rotation = float(raw.get("rotation_deg") or 0.0)
        if image_raw is not None:
            image = base / image_raw
            if not image.is_file():
                raise ManifestError("schema-violation",
                                    f"{ctx}: image path {image} not found")
            crop_raw = raw.get("crop")
            if crop_raw is not None:
                b = _box_from_dict(crop_raw, ctx, ManifestError)
                crop = CropRect(int(b["x"]), int(b["y"]), int(b["w"]), int(b["h"]))
        entries.append(ManifestEntry(
            cow_id=cow_id, day=int(day), image=image,
            rotation_deg=rotation, crop=crop,
            annotation=base / _require(raw, "annotation", ctx),
        ))
    return Manifest(collection=int(collection), entries=tuple(entries),
                    base_dir=base)


def save_manifest(manifest: Manifest, path) -> None:
    path = Path(path)
    base = path.parent

    def rel(p: Path | None):
        return None if p is None else os.path.relpath(p, base)

    doc = {
        "schema": MANIFEST_SCHEMA,
        "collection": manifest.collection,
        "entries": [
            {
                "cow_id": e.cow_id,
                "day": e.day,
                "image": rel(e.image),
                "rotation_deg": e.rotation_deg,
                "crop": None if e.crop is None else
                    {"x": e.crop.x, "y": e.crop.y, "w": e.crop.w, "h": e.crop.h},
                "annotation": rel(e.annotation),
            }
            for e in manifest.entries
        ],
    }
    _atomic_write_text(path, json.dumps(doc, indent=2))


def annotation_to_dict(ann: UdderAnnotation) -> dict:
    return {
        "schema": ANNOTATION_SCHEMA,
        "image": ann.image_ref,
        "udder_box": {"x": ann.udder_box.x, "y": ann.udder_box.y,
                      "w": ann.udder_box.w, "h": ann.udder_box.h},
        "teats": [
            {"position": t.position,
             "box": {"x": t.x, "y": t.y, "w": t.w, "h": t.h}}
            for t in ann.teats
        ],
    }


def annotation_from_dict(doc) -> UdderAnnotation:
    if not isinstance(doc, dict):
        raise AnnotationError("parse-error", "annotation must be a JSON object")
    for key in ("image", "udder_box", "teats"):
        if key not in doc:
            raise AnnotationError("parse-error", f"missing field {key!r}")

    ub = doc["udder_box"]
    try:
        udder = Box(float(ub["x"]), float(ub["y"]), float(ub["w"]), float(ub["h"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise AnnotationError("parse-error", "udder_box needs numeric x/y/w/h") from exc
    if udder.w <= 0 or udder.h <= 0:
        raise AnnotationError("non-positive-box", "udder box dims must be > 0")

    teats = []
    seen = set()
    for raw in doc["teats"]:
        try:
            pos = raw["position"]
            b = raw["box"]
            box_vals = {k: float(b[k]) for k in ("x", "y", "w", "h")}
        except (KeyError, TypeError, ValueError) as exc:
            raise AnnotationError("parse-error",
                                  "teat needs position and numeric box") from exc
        if pos not in POSITIONS:
            raise AnnotationError("parse-error", f"unknown position {pos!r}")
        if pos in seen:
            raise AnnotationError("duplicate-position", f"position {pos} repeated")
        seen.add(pos)
        if box_vals["w"] <= 0 or box_vals["h"] <= 0:
            raise AnnotationError("non-positive-box",
                                  f"teat {pos} box dims must be > 0")
        teats.append(TeatBox(position=pos, **box_vals))
    missing = set(POSITIONS) - seen
    if missing:
        raise AnnotationError("missing-teat",
                              f"missing teat position(s) {sorted(missing)}")
    return UdderAnnotation(image_ref=str(doc["image"]), udder_box=udder,
                           teats=tuple(teats))


def load_annotation(path) -> UdderAnnotation:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AnnotationError("parse-error", f"{path}: {exc}") from exc
    return annotation_from_dict(doc)


def save_annotation(ann: UdderAnnotation, path) -> None:
    _atomic_write_text(Path(path), json.dumps(annotation_to_dict(ann), indent=2))


def _atomic_write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def preprocessed_image(entry: ManifestEntry) -> np.ndarray:
    """Load the entry's image and apply its rotate/crop parameters."""
    if entry.image is None:
        raise FileNotFoundError(f"entry for cow {entry.cow_id} day {entry.day} "
                                "has no image")
    img = imaging.load_grayscale(entry.image)
    rect = entry.crop
    if rect is None and entry.rotation_deg == 0.0:
        return img
    if rect is None:
        # Rotation without an explicit crop keeps the full rotated canvas.
        h, w = img.shape
        out_w, out_h = imaging.rotated_size(w, h, entry.rotation_deg)
        rect = CropRect(0, 0, out_w, out_h)
    return imaging.rotate_crop(img, entry.rotation_deg, rect)


def extract_entry_features(entry: ManifestEntry, layout: str,
                           normalize: bool = False) -> FeatureVector:
    """Feature vector for one manifest entry in the requested layout.

    combined-89 is geometry-17 followed by texture-72.
    """
    parts = []
    if layout in ("geometry-17", "combined-89"):
        ann = load_annotation(entry.annotation)
        parts.append(geometric_features(ann, normalize=normalize).flatten())
    if layout in ("texture-72", "combined-89"):
        img = preprocessed_image(entry)
        parts.append(texture_features(img).flatten())
    if layout not in LAYOUTS:
        raise ValueError(f"unknown layout {layout!r}")
    return FeatureVector(values=np.concatenate(parts), layout=layout)


def extract_dataset(manifests, layout: str, normalize: bool = False) -> Dataset:
    """Build the evaluation dataset from one or more manifests.

    Per-sample failures are wrapped in ExtractionError carrying the sample
    identity.
    """
    samples = []
    for m in manifests:
        for e in m.entries:
            sid = f"collection {m.collection} cow {e.cow_id} day {e.day}"
            try:
                fv = extract_entry_features(e, layout, normalize=normalize)
            except Exception as exc:
                raise ExtractionError(sid, exc) from exc
            samples.append(Sample(cow_id=e.cow_id, collection=m.collection,
                                  day=e.day, features=fv))
    return Dataset(samples=tuple(samples))


def export_features(ds: Dataset, layout: str, path) -> None:
    """CSV: cow_id,collection,day,f0..f{d-1}; floats at full precision."""
    if layout not in LAYOUTS:
        raise ValueError(f"unknown layout {layout!r}")
    dim = LAYOUTS[layout]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["cow_id", "collection", "day"]
                        + [f"f{i}" for i in range(dim)])
        for s in ds.samples:
            if s.features.layout != layout:
                raise ValueError(
                    f"sample {s.cow_id} has layout {s.features.layout}, "
                    f"expected {layout}"
                )
            writer.writerow([s.cow_id, s.collection, s.day]
                            + [repr(float(v)) for v in s.features.values])


def import_features(path) -> Dataset:
    """Inverse of export_features; layout inferred from the column count."""
    dim_to_layout = {v: k for k, v in LAYOUTS.items()}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        dim = len(header) - 3
        layout = dim_to_layout.get(dim)
        if layout is None:
            raise ValueError(f"feature CSV has unsupported dimension {dim}")
        samples = tuple(
            Sample(
                cow_id=row[0],
                collection=int(row[1]),
                day=int(row[2]),
                features=FeatureVector(np.array([float(v) for v in row[3:]]),
                                       layout),
            )
            for row in reader
        )
    return Dataset(samples=samples)
