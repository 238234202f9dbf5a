"""Teat-geometry descriptor from an annotated frame.

The four teat boxes (positions LF, RF, RR, LR = left/right x front/rear)
give four center points; cyclic order LF -> RF -> RR -> LR yields four edge
distances and four interior angles, the boxes give sizes and aspect ratios,
and the udder box contributes its own aspect ratio: 17 features total,
flattened as distances(4), angles(4), sizes(4), aspects(4), udder_aspect(1).

Cyclic neighbor order comes from the position labels, not from geometry;
check_convex_order rejects annotations where that labeling is not a strictly
convex cycle (swapped labels, collinear or coincident centers).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from udderid.errors import DegenerateGeometryError

POSITIONS = ("LF", "RF", "RR", "LR")  # cyclic order around the quadrilateral

GEOMETRY_DIM = 17


@dataclass(frozen=True)
class TeatBox:
    position: str
    x: float
    y: float
    w: float
    h: float

    def __post_init__(self):
        if self.position not in POSITIONS:
            raise ValueError(f"unknown teat position {self.position!r}")
        if self.w <= 0 or self.h <= 0:
            raise ValueError(f"teat box dims must be > 0, got {self.w}x{self.h}")

    @property
    def center(self) -> tuple:
        return (self.x + self.w / 2.0, self.y + self.h / 2.0)


@dataclass(frozen=True)
class Box:
    """Plain rectangle (used for the udder box)."""

    x: float
    y: float
    w: float
    h: float


@dataclass(frozen=True)
class UdderAnnotation:
    """Four position-labeled teat boxes plus the udder box for one frame."""

    image_ref: str
    udder_box: Box
    teats: tuple  # exactly one TeatBox per position

    def __post_init__(self):
        positions = [t.position for t in self.teats]
        if sorted(positions) != sorted(POSITIONS):
            raise ValueError(
                f"annotation needs exactly one teat per position, got {positions}"
            )
        if self.udder_box.w <= 0 or self.udder_box.h <= 0:
            raise ValueError("udder box dims must be > 0")

    def teat(self, position: str) -> TeatBox:
        for t in self.teats:
            if t.position == position:
                return t
        raise KeyError(position)


@dataclass(frozen=True)
class GeometricFeatures:
    """17-dim descriptor; see module docstring for ordering."""

    distances: np.ndarray  # edges LF-RF, RF-RR, RR-LR, LR-LF
    angles: np.ndarray  # interior angles at LF, RF, RR, LR (degrees)
    sizes: np.ndarray  # box areas at LF, RF, RR, LR (px^2)
    aspects: np.ndarray  # box w/h at LF, RF, RR, LR
    udder_aspect: float

    def flatten(self) -> np.ndarray:
        return np.concatenate(
            [self.distances, self.angles, self.sizes, self.aspects,
             [self.udder_aspect]]
        )


def teat_centers(ann: UdderAnnotation) -> dict:
    """Box centers keyed by position: (x + w/2, y + h/2)."""
    return {p: ann.teat(p).center for p in POSITIONS}


def _cyclic_points(centers: dict) -> np.ndarray:
    return np.array([centers[p] for p in POSITIONS], dtype=np.float64)


def check_convex_order(centers: dict) -> bool:
    """True iff the labeled cycle is strictly convex with consistent winding.

    Cross products of consecutive cyclic edges must all share one strict
    sign; a zero cross (collinear or coincident centers) is degenerate.
    """
    pts = _cyclic_points(centers)
    crosses = []
    for i in range(4):
        e1 = pts[(i + 1) % 4] - pts[i]
        e2 = pts[(i + 2) % 4] - pts[(i + 1) % 4]
        crosses.append(e1[0] * e2[1] - e1[1] * e2[0])
    if any(c == 0.0 for c in crosses):
        return False
    return all(c > 0 for c in crosses) or all(c < 0 for c in crosses)


def _require_convex(centers: dict) -> np.ndarray:
    if not check_convex_order(centers):
        raise DegenerateGeometryError(
            "teat centers are not a strictly convex LF->RF->RR->LR cycle"
        )
    return _cyclic_points(centers)


def edge_distances(centers: dict) -> np.ndarray:
    """Euclidean lengths of the 4 cyclic edges, LF-RF first."""
    pts = _require_convex(centers)
    return np.array(
        [float(np.hypot(*(pts[(i + 1) % 4] - pts[i]))) for i in range(4)]
    )


def interior_angles(centers: dict) -> np.ndarray:
    """Interior angle at each vertex (degrees), order LF, RF, RR, LR."""
    pts = _require_convex(centers)
    angles = []
    for i in range(4):
        v_prev = pts[(i - 1) % 4] - pts[i]
        v_next = pts[(i + 1) % 4] - pts[i]
        cos_a = np.dot(v_prev, v_next) / (
            np.linalg.norm(v_prev) * np.linalg.norm(v_next)
        )
        angles.append(math.degrees(math.acos(max(-1.0, min(1.0, cos_a)))))
    return np.array(angles)


def geometric_features(ann: UdderAnnotation, normalize: bool = False) -> GeometricFeatures:
    """Full 17-dim descriptor of one annotation.

    With normalize on, distances are divided by sqrt(udder area) and sizes
    by udder area, making the flattened vector scale-invariant; angles and
    aspect ratios are untouched either way.
    """
    centers = teat_centers(ann)
    distances = edge_distances(centers)
    angles = interior_angles(centers)
    sizes = np.array([ann.teat(p).w * ann.teat(p).h for p in POSITIONS])
    aspects = np.array([ann.teat(p).w / ann.teat(p).h for p in POSITIONS])
    udder_aspect = ann.udder_box.w / ann.udder_box.h
    if normalize:
        udder_area = ann.udder_box.w * ann.udder_box.h
        distances = distances / math.sqrt(udder_area)
        sizes = sizes / udder_area
    return GeometricFeatures(
        distances=distances,
        angles=angles,
        sizes=sizes,
        aspects=aspects,
        udder_aspect=udder_aspect,
    )
