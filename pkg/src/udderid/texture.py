"""Rotation-invariant LBP texture histograms at radii 1 and 2.

Per pixel, the 8 circular neighbors are thresholded against the center
(bit k = 1 iff center > neighbor k) and the 8-bit code is reduced to its
cyclic-rotation equivalence class ("necklace"); 36 such classes exist.
The whole-image, per-radius class histograms are the texture descriptor:
hist_r1 (36) followed by hist_r2 (36), 72 dims flattened.

The counting loop runs in the compiled kernel when available and falls back
to numpy otherwise; set UDDERID_NO_NATIVE=1 to force the fallback. Both
paths are bitwise-identical.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from udderid._lbp_common import N_CLASSES
from udderid.errors import ImageTooSmallError
from udderid.imaging import as_gray_image

if os.environ.get("UDDERID_NO_NATIVE"):
    from udderid import _lbp_fallback as _kernel

    KERNEL_BACKEND = "fallback"
else:
    try:
        from udderid import _lbp_kernel as _kernel  # type: ignore[no-redef]

        KERNEL_BACKEND = "native"
    except ImportError:
        from udderid import _lbp_fallback as _kernel  # type: ignore[no-redef]

        KERNEL_BACKEND = "fallback"


@dataclass(frozen=True)
class NecklaceTable:
    """Mapping of the 256 8-bit codes onto their 36 rotation classes.

    class_of_code[c] is the class index of code c; class index i belongs to
    the i-th smallest canonical (rotation-minimal) code.
    """

    class_of_code: np.ndarray
    canonical_codes: tuple


@dataclass(frozen=True)
class TextureFeatures:
    """Normalized 36-bin histograms at radius 1 and radius 2."""

    hist_r1: np.ndarray
    hist_r2: np.ndarray

    def flatten(self) -> np.ndarray:
        """72-dim vector: r1 classes 0..35 then r2 classes 0..35."""
        return np.concatenate([self.hist_r1, self.hist_r2])


def rotate_code(code: int, steps: int) -> int:
    """Cyclically rotate an 8-bit code left by `steps` bits."""
    steps %= 8
    return ((code << steps) | (code >> (8 - steps))) & 0xFF


def lbp_code(center: int, neighbors) -> int:
    """8-bit code: bit k set iff center > neighbors[k]; equality gives 0."""
    if len(neighbors) != 8:
        raise ValueError(f"expected 8 neighbors, got {len(neighbors)}")
    code = 0
    for k, nb in enumerate(neighbors):
        if center > nb:
            code |= 1 << k
    return code


@lru_cache(maxsize=1)
def build_necklace_table() -> NecklaceTable:
    """Brute-force the canonical form of every code over its 8 rotations."""
    canonical = [min(rotate_code(c, s) for s in range(8)) for c in range(256)]
    canon_sorted = tuple(sorted(set(canonical)))
    rank = {c: i for i, c in enumerate(canon_sorted)}
    lut = np.array([rank[canonical[c]] for c in range(256)], dtype=np.int32)
    assert len(canon_sorted) == N_CLASSES
    return NecklaceTable(class_of_code=lut, canonical_codes=canon_sorted)


def lbp_histogram(img, radius: int) -> np.ndarray:
    """Normalized 36-bin necklace-class histogram over the whole image.

    Centers whose sample circle exits the image are skipped (no padding);
    the precondition is at least one valid center.
    """
    img = as_gray_image(img)
    h, w = img.shape
    if w <= 2 * radius or h <= 2 * radius:
        raise ImageTooSmallError(
            f"{w}x{h} image has no valid center at radius {radius}"
        )
    lut = build_necklace_table().class_of_code
    counts = np.asarray(_kernel.lbp_counts(np.ascontiguousarray(img), radius, lut))
    return counts / counts.sum()


def texture_features(img) -> TextureFeatures:
    """Histograms at both radii; requires the image to fit radius 2."""
    return TextureFeatures(
        hist_r1=lbp_histogram(img, 1), hist_r2=lbp_histogram(img, 2)
    )
