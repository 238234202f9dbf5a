"""Seeded synthetic-herd generator for desk-scale validation.

Each cow gets a stable template (convex teat layout, box dims, udder dims,
texture seed) drawn from documented priors. Sessions perturb the template
with Gaussian center jitter, relative box-dim jitter, and a global scale
factor (camera-standoff variation); collection-2 sessions additionally
apply a per-cow drift transform (months-scale physiological change) whose
strength grows with the drift factor. Drift factor 1 and zero sigmas
reproduce the template exactly.

The priors are invented; their contract is qualitative only (accuracy
degrades with noise, cross-collection drift hurts more than day-to-day
jitter). Rendering is optional; the geometry pipeline runs off annotations
alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from udderid import dataset_io
from udderid.classifiers import FeatureVector
from udderid.errors import BoxOutsideCanvasError
from udderid.evaluation import Dataset, Sample
from udderid.geometry import (
    POSITIONS,
    Box,
    TeatBox,
    UdderAnnotation,
    check_convex_order,
    geometric_features,
)
from udderid.imaging import save_png
from udderid.seeds import rng_for
from udderid.texture import texture_features

CANVAS = 400

# Drift displacement per unit of (drift - 1), pixels of per-teat shape change.
_DRIFT_DISPLACEMENT = 12.0


@dataclass(frozen=True)
class GeometryPrior:
    """Uniform/normal priors for template generation (pixel units)."""

    canvas: int = CANVAS
    half_span: tuple = (40.0, 100.0)  # half of the 80-200 px teat spacing
    corner_jitter: float = 15.0
    teat_dim: tuple = (18.0, 42.0)
    udder_margin: tuple = (10.0, 30.0)


@dataclass(frozen=True)
class CowTemplate:
    cow_id: str
    centers: dict  # position -> (x, y)
    box_dims: dict  # position -> (w, h)
    udder_dims: tuple  # (w, h)
    texture_seed: int


@dataclass(frozen=True)
class NoiseModel:
    center_jitter: float = 1.0  # px
    dim_jitter: float = 0.02  # relative
    scale_jitter: float = 0.02  # relative
    drift: float = 1.0  # >= 1; applied to collection-2 sessions

    def __post_init__(self):
        if min(self.center_jitter, self.dim_jitter, self.scale_jitter) < 0:
            raise ValueError("noise sigmas must be >= 0")
        if self.drift < 1.0:
            raise ValueError("drift factor must be >= 1")


def generate_herd(count: int, master_seed: int,
                  prior: GeometryPrior = GeometryPrior()) -> list:
    """Deterministically draw `count` convex cow templates."""
    if count < 1:
        raise ValueError("herd count must be >= 1")
    width = max(3, len(str(count)))
    herd = []
    for i in range(count):
        rng = rng_for(master_seed, "template", i)
        centers = _draw_convex_layout(rng, prior)
        dims = {
            p: (rng.uniform(*prior.teat_dim), rng.uniform(*prior.teat_dim))
            for p in POSITIONS
        }
        xs = [centers[p][0] for p in POSITIONS]
        ys = [centers[p][1] for p in POSITIONS]
        udder = (
            max(xs) - min(xs) + max(dims[p][0] for p in POSITIONS)
            + 2 * rng.uniform(*prior.udder_margin),
            max(ys) - min(ys) + max(dims[p][1] for p in POSITIONS)
            + 2 * rng.uniform(*prior.udder_margin),
        )
        herd.append(CowTemplate(
            cow_id=f"cow{i + 1:0{width}d}",
            centers=centers,
            box_dims=dims,
            udder_dims=udder,
            texture_seed=int(rng.integers(2 ** 31)),
        ))
    return herd


def _draw_convex_layout(rng, prior: GeometryPrior) -> dict:
    cx = prior.canvas / 2.0
    while True:
        ox = cx + rng.uniform(-30, 30)
        oy = cx + rng.uniform(-30, 30)
        hx = rng.uniform(*prior.half_span)
        hy = rng.uniform(*prior.half_span)
        j = prior.corner_jitter
        base = {
            "LF": (ox - hx, oy - hy),
            "RF": (ox + hx, oy - hy),
            "RR": (ox + hx, oy + hy),
            "LR": (ox - hx, oy + hy),
        }
        centers = {
            p: (x + rng.uniform(-j, j), y + rng.uniform(-j, j))
            for p, (x, y) in base.items()
        }
        if check_convex_order(centers):
            return centers


def _apply_drift(template: CowTemplate, drift: float):
    """Per-cow months-scale change: stable across sessions of collection 2."""
    centers = {p: np.array(template.centers[p]) for p in POSITIONS}
    dims = {p: np.array(template.box_dims[p]) for p in POSITIONS}
    udder = np.array(template.udder_dims)
    if drift == 1.0:
        return centers, dims, udder

    rng = rng_for(template.texture_seed, "drift")
    g = drift ** rng.uniform(-1.0, 1.0)
    disp = (drift - 1.0) * _DRIFT_DISPLACEMENT
    centroid = np.mean([centers[p] for p in POSITIONS], axis=0)
    for p in POSITIONS:
        centers[p] = centroid + g * (centers[p] - centroid) + rng.normal(0, disp, 2)
        dims[p] = dims[p] * g * drift ** rng.uniform(-0.5, 0.5)
    return centers, dims, udder * g


def sample_session(template: CowTemplate, noise: NoiseModel, session: tuple,
                   seed: int) -> UdderAnnotation:
    """One annotated observation of the cow; resampled until convex."""
    collection, day = session
    centers0, dims0, udder0 = _apply_drift(
        template, noise.drift if collection == 2 else 1.0
    )
    rng = rng_for(seed, "session", template.cow_id, collection, day)
    while True:
        centers = {
            p: centers0[p] + rng.normal(0.0, noise.center_jitter, 2)
            for p in POSITIONS
        }
        scale = max(0.2, 1.0 + rng.normal(0.0, noise.scale_jitter))
        centroid = np.mean([centers[p] for p in POSITIONS], axis=0)
        centers = {p: centroid + scale * (centers[p] - centroid)
                   for p in POSITIONS}
        dims = {
            p: np.maximum(
                dims0[p] * scale * (1.0 + rng.normal(0.0, noise.dim_jitter, 2)),
                2.0,
            )
            for p in POSITIONS
        }
        if not check_convex_order(centers):
            continue
        teats = tuple(
            TeatBox(
                position=p,
                x=float(centers[p][0] - dims[p][0] / 2.0),
                y=float(centers[p][1] - dims[p][1] / 2.0),
                w=float(dims[p][0]),
                h=float(dims[p][1]),
            )
            for p in POSITIONS
        )
        uw, uh = float(udder0[0] * scale), float(udder0[1] * scale)
        return UdderAnnotation(
            image_ref=f"{template.cow_id}_c{collection}_d{day}",
            udder_box=Box(
                x=float(centroid[0] - uw / 2.0),
                y=float(centroid[1] - uh / 2.0),
                w=uw,
                h=uh,
            ),
            teats=teats,
        )


def render_synthetic_image(ann: UdderAnnotation, texture_seed: int,
                           size: int = CANVAS) -> np.ndarray:
    """Procedural NIR-looking frame: noise base, dark vein strokes, teat
    shading. Deterministic in (annotation, texture_seed, size)."""
    for t in ann.teats:
        if t.x < 0 or t.y < 0 or t.x + t.w > size or t.y + t.h > size:
            raise BoxOutsideCanvasError(
                f"teat {t.position} box exceeds {size}x{size} canvas"
            )

    rng = rng_for(texture_seed, "texture")
    grid = rng.uniform(90, 170, size=(9, 9))
    base = _bilinear_upsample(grid, size)

    shade = np.zeros((size, size))
    yy, xx = np.mgrid[0:size, 0:size]
    for _ in range(4 + int(rng.integers(0, 4))):
        p0, p1, p2 = rng.uniform(0, size, size=(3, 2))
        depth = rng.uniform(25, 55)
        width = rng.uniform(1.5, 3.5)
        ts = np.linspace(0.0, 1.0, 2 * size)
        curve = (
            np.outer((1 - ts) ** 2, p0)
            + np.outer(2 * (1 - ts) * ts, p1)
            + np.outer(ts ** 2, p2)
        )
        for px, py in curve:
            x0, y0 = int(px), int(py)
            if 0 <= x0 < size and 0 <= y0 < size:
                lo_y, hi_y = max(0, y0 - 3), min(size, y0 + 4)
                lo_x, hi_x = max(0, x0 - 3), min(size, x0 + 4)
                d2 = (yy[lo_y:hi_y, lo_x:hi_x] - py) ** 2 + (
                    xx[lo_y:hi_y, lo_x:hi_x] - px
                ) ** 2
                stamp = depth * np.exp(-d2 / (2 * width ** 2))
                np.maximum(shade[lo_y:hi_y, lo_x:hi_x], stamp,
                           out=shade[lo_y:hi_y, lo_x:hi_x])

    out = base - shade
    for t in ann.teats:
        cx, cy = t.x + t.w / 2.0, t.y + t.h / 2.0
        lo_y, hi_y = int(max(0, t.y)), int(min(size, t.y + t.h))
        lo_x, hi_x = int(max(0, t.x)), int(min(size, t.x + t.w))
        ny = (yy[lo_y:hi_y, lo_x:hi_x] - cy) / (t.h / 2.0)
        nx = (xx[lo_y:hi_y, lo_x:hi_x] - cx) / (t.w / 2.0)
        r2 = nx ** 2 + ny ** 2
        out[lo_y:hi_y, lo_x:hi_x] -= np.clip(1.0 - r2, 0.0, 1.0) * 45.0
    return np.clip(np.rint(out), 0, 255).astype(np.uint8)


def _bilinear_upsample(grid: np.ndarray, size: int) -> np.ndarray:
    gh, gw = grid.shape
    ys = np.linspace(0, gh - 1, size)
    xs = np.linspace(0, gw - 1, size)
    y0 = np.clip(ys.astype(int), 0, gh - 2)
    x0 = np.clip(xs.astype(int), 0, gw - 2)
    fy = (ys - y0)[:, None]
    fx = (xs - x0)[None, :]
    a = grid[np.ix_(y0, x0)]
    b = grid[np.ix_(y0, x0 + 1)]
    c = grid[np.ix_(y0 + 1, x0)]
    d = grid[np.ix_(y0 + 1, x0 + 1)]
    return a * (1 - fy) * (1 - fx) + b * (1 - fy) * fx + c * fy * (1 - fx) + d * fy * fx


def build_dataset(templates, noise: NoiseModel, collections=(1,),
                  seed: int = 0, layout: str = "geometry-17",
                  normalize: bool = False) -> Dataset:
    """In-memory feature dataset over (collection, day) sessions of the herd."""
    samples = []
    for coll in collections:
        for day in (1, 2):
            for tpl in templates:
                ann = sample_session(tpl, noise, (coll, day), seed)
                parts = []
                if layout in ("geometry-17", "combined-89"):
                    parts.append(geometric_features(ann, normalize=normalize).flatten())
                if layout in ("texture-72", "combined-89"):
                    img = render_synthetic_image(ann, tpl.texture_seed)
                    parts.append(texture_features(img).flatten())
                samples.append(Sample(
                    cow_id=tpl.cow_id,
                    collection=coll,
                    day=day,
                    features=FeatureVector(np.concatenate(parts), layout),
                ))
    return Dataset(samples=tuple(samples))


def write_synthetic_dataset(out_dir, templates, noise: NoiseModel,
                            collections=(1,), seed: int = 0,
                            render: bool = False) -> list:
    """Write per-collection manifests + annotations (+ optional PNG frames).

    Emits exactly the dataset_io file formats, so synthetic and real data
    are interchangeable downstream. Returns the manifest paths.
    """
    out_dir = Path(out_dir)
    manifest_paths = []
    for coll in collections:
        coll_dir = out_dir / f"collection{coll}"
        (coll_dir / "annotations").mkdir(parents=True, exist_ok=True)
        if render:
            (coll_dir / "images").mkdir(parents=True, exist_ok=True)
        entries = []
        for tpl in templates:
            for day in (1, 2):
                ann = sample_session(tpl, noise, (coll, day), seed)
                ann_path = coll_dir / "annotations" / f"{ann.image_ref}.json"
                dataset_io.save_annotation(ann, ann_path)
                img_path = None
                if render:
                    img_path = coll_dir / "images" / f"{ann.image_ref}.png"
                    save_png(
                        render_synthetic_image(ann, tpl.texture_seed), img_path
                    )
                entries.append(dataset_io.ManifestEntry(
                    cow_id=tpl.cow_id,
                    day=day,
                    image=img_path,
                    rotation_deg=0.0,
                    crop=None,
                    annotation=ann_path,
                ))
        manifest = dataset_io.Manifest(
            collection=coll, entries=tuple(entries), base_dir=coll_dir
        )
        mpath = coll_dir / "manifest.json"
        dataset_io.save_manifest(manifest, mpath)
        manifest_paths.append(mpath)
    return manifest_paths
