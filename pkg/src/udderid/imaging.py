"""Image loading and the canonical rotate-then-crop preprocessing step.

A grayscale image is represented throughout the toolkit as a 2-D uint8
numpy array (row-major, shape (height, width), values 0..255). Rotation
angle and crop rectangle are inputs read from the dataset manifest; there
is no automatic pose detection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from PIL import Image, UnidentifiedImageError

from udderid.errors import CropOutOfBoundsError, ImageDecodeError

# Rec.601 luma weights for RGB -> gray.
_LUMA = np.array([0.299, 0.587, 0.114])


@dataclass(frozen=True)
class CropRect:
    """Axis-aligned crop rectangle, origin at the image top-left."""

    x: int
    y: int
    w: int
    h: int

    def __post_init__(self):
        if self.w < 1 or self.h < 1:
            raise ValueError(f"crop dims must be >= 1, got {self.w}x{self.h}")


def as_gray_image(arr) -> np.ndarray:
    """Validate/convert an array-like into the canonical uint8 image form."""
    img = np.asarray(arr)
    if img.ndim != 2:
        raise ValueError(f"expected 2-D grayscale array, got shape {img.shape}")
    if img.shape[0] < 1 or img.shape[1] < 1:
        raise ValueError("image must be at least 1x1")
    if img.dtype != np.uint8:
        if img.min() < 0 or img.max() > 255:
            raise ValueError("intensities must lie in [0, 255]")
        img = img.astype(np.uint8)
    return img


def load_grayscale(path) -> np.ndarray:
    """Load a PNG/JPEG file as a grayscale image.

    Color input is converted with the Rec.601 luma weights
    (0.299 R + 0.587 G + 0.114 B) rounded to the nearest integer.
    """
    try:
        with Image.open(path) as im:
            if im.mode == "L":
                return np.asarray(im, dtype=np.uint8)
            rgb = np.asarray(im.convert("RGB"), dtype=np.float64)
    except FileNotFoundError:
        raise
    except UnidentifiedImageError as exc:
        raise ImageDecodeError(f"cannot decode image file {path}") from exc
    gray = np.rint(rgb @ _LUMA)
    return np.clip(gray, 0, 255).astype(np.uint8)


def save_png(img: np.ndarray, path) -> None:
    """Write a grayscale image as PNG."""
    Image.fromarray(as_gray_image(img), mode="L").save(path, format="PNG")


def encode_png(img: np.ndarray) -> bytes:
    """Encode a grayscale image to PNG bytes (for the annotation server)."""
    import io

    buf = io.BytesIO()
    Image.fromarray(as_gray_image(img), mode="L").save(buf, format="PNG")
    return buf.getvalue()


def rotated_size(width: int, height: int, angle_deg: float) -> tuple:
    """Canvas (w, h) of the expanded rotated image."""
    theta = math.radians(float(angle_deg) % 360.0)
    cos_t, sin_t = abs(math.cos(theta)), abs(math.sin(theta))
    return (
        int(round(width * cos_t + height * sin_t)),
        int(round(width * sin_t + height * cos_t)),
    )


def _rotate_exact(img: np.ndarray, quarter_turns: int) -> np.ndarray:
    """Lossless rotation by multiples of 90 deg counter-clockwise."""
    return np.ascontiguousarray(np.rot90(img, quarter_turns % 4))


def _rotate_bilinear(img: np.ndarray, angle_deg: float) -> np.ndarray:
    """Counter-clockwise rotation about the image center, expanded canvas.

    Output pixels are bilinear samples of the source; samples falling
    outside the source are 0.
    """
    h, w = img.shape
    theta = math.radians(angle_deg)
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    out_w, out_h = rotated_size(w, h, angle_deg)

    cx_in, cy_in = (w - 1) / 2.0, (h - 1) / 2.0
    cx_out, cy_out = (out_w - 1) / 2.0, (out_h - 1) / 2.0

    ys, xs = np.mgrid[0:out_h, 0:out_w]
    dx = xs - cx_out
    dy = ys - cy_out
    # Inverse map of a visually counter-clockwise rotation (y axis down).
    src_x = cos_t * dx - sin_t * dy + cx_in
    src_y = sin_t * dx + cos_t * dy + cy_in

    x0 = np.floor(src_x).astype(np.int64)
    y0 = np.floor(src_y).astype(np.int64)
    fx = src_x - x0
    fy = src_y - y0

    src = img.astype(np.float64)

    def sample(yy, xx):
        inside = (xx >= 0) & (xx < w) & (yy >= 0) & (yy < h)
        vals = np.zeros_like(fx)
        vals[inside] = src[yy[inside], xx[inside]]
        return vals

    v00 = sample(y0, x0)
    v01 = sample(y0, x0 + 1)
    v10 = sample(y0 + 1, x0)
    v11 = sample(y0 + 1, x0 + 1)
    out = (
        v00 * (1 - fx) * (1 - fy)
        + v01 * fx * (1 - fy)
        + v10 * (1 - fx) * fy
        + v11 * fx * fy
    )
    return np.clip(np.rint(out), 0, 255).astype(np.uint8)


def rotate_crop(img: np.ndarray, angle_deg: float, rect: CropRect) -> np.ndarray:
    """Rotate counter-clockwise about the center, then crop.

    Multiples of 90 degrees take an exact permutation path, so right-angle
    rotations are lossless. The crop rectangle addresses the rotated canvas
    and must lie fully inside it.
    """
    img = as_gray_image(img)
    angle = float(angle_deg) % 360.0
    if angle % 90.0 == 0.0:
        rotated = _rotate_exact(img, int(angle // 90))
    else:
        rotated = _rotate_bilinear(img, angle)

    rh, rw = rotated.shape
    if rect.x < 0 or rect.y < 0 or rect.x + rect.w > rw or rect.y + rect.h > rh:
        raise CropOutOfBoundsError(
            f"crop {rect} outside rotated bounds {rw}x{rh}"
        )
    return np.ascontiguousarray(
        rotated[rect.y : rect.y + rect.h, rect.x : rect.x + rect.w]
    )


def full_rect(img: np.ndarray) -> CropRect:
    """CropRect covering the whole image."""
    h, w = as_gray_image(img).shape
    return CropRect(0, 0, w, h)
