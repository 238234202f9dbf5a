"""Pure-numpy LBP counting kernel.

Drop-in replacement for the compiled kernel in udderid._lbp_kernel; the two
must agree bitwise (same bilinear weight constants, same term grouping).
"""

import numpy as np

from udderid._lbp_common import (
    AXIS_OFFSETS_R2,
    DIAG_SIGNS_R2,
    DIAG_W_FF,
    DIAG_W_NF,
    DIAG_W_NN,
    N_CLASSES,
    NEIGHBOR_OFFSETS_R1,
)


def _shift(img: np.ndarray, dx: int, dy: int, margin: int) -> np.ndarray:
    """View of img offset by (dx, dy) relative to the valid-center region."""
    h, w = img.shape
    return img[margin + dy : h - margin + dy, margin + dx : w - margin + dx]


def lbp_counts(img: np.ndarray, radius: int, lut: np.ndarray) -> np.ndarray:
    """Count necklace classes over all centers whose sample circle fits.

    img is uint8 (h, w); lut maps the 256 codes to class indices.
    Returns int64 counts of length N_CLASSES.
    """
    h, w = img.shape
    margin = radius
    codes = np.zeros((h - 2 * margin, w - 2 * margin), dtype=np.int32)

    if radius == 1:
        center = _shift(img, 0, 0, margin)
        for k, (dx, dy) in enumerate(NEIGHBOR_OFFSETS_R1):
            codes |= (center > _shift(img, dx, dy, margin)).astype(np.int32) << k
    elif radius == 2:
        src = img.astype(np.float64)
        center = _shift(src, 0, 0, margin)
        for k in range(8):
            if k in AXIS_OFFSETS_R2:
                dx, dy = AXIS_OFFSETS_R2[k]
                sample = _shift(src, dx, dy, margin)
            else:
                sx, sy = DIAG_SIGNS_R2[k]
                p_nn = _shift(src, sx, sy, margin)
                p_ff = _shift(src, 2 * sx, 2 * sy, margin)
                p_nf = _shift(src, sx, 2 * sy, margin)
                p_fn = _shift(src, 2 * sx, sy, margin)
                sample = (DIAG_W_NN * p_nn + DIAG_W_FF * p_ff) + DIAG_W_NF * (
                    p_nf + p_fn
                )
            codes |= (center > sample).astype(np.int32) << k
    else:
        raise ValueError(f"radius must be 1 or 2, got {radius}")

    return np.bincount(lut[codes.ravel()], minlength=N_CLASSES).astype(np.int64)
