# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled LBP counting kernel (hot loop).

Must stay bitwise-equivalent to udderid._lbp_fallback: same neighbor order,
same diagonal bilinear weights, same term grouping. Compiled with
-ffp-contract=off (see setup.py).
"""

import numpy as np

from udderid._lbp_common import DIAG_W_FF, DIAG_W_NF, DIAG_W_NN, N_CLASSES

cdef double W_NN = DIAG_W_NN
cdef double W_FF = DIAG_W_FF
cdef double W_NF = DIAG_W_NF


def lbp_counts(const unsigned char[:, ::1] img, int radius, const int[::1] lut):
    """Count necklace classes over all valid centers; mirrors the fallback."""
    cdef Py_ssize_t h = img.shape[0]
    cdef Py_ssize_t w = img.shape[1]
    cdef Py_ssize_t x, y
    cdef int code
    cdef double c, v
    cdef unsigned char cu

    counts_arr = np.zeros(N_CLASSES, dtype=np.int64)
    cdef long long[::1] counts = counts_arr

    if radius == 1:
        for y in range(1, h - 1):
            for x in range(1, w - 1):
                cu = img[y, x]
                code = 0
                if cu > img[y, x + 1]:
                    code |= 1
                if cu > img[y - 1, x + 1]:
                    code |= 2
                if cu > img[y - 1, x]:
                    code |= 4
                if cu > img[y - 1, x - 1]:
                    code |= 8
                if cu > img[y, x - 1]:
                    code |= 16
                if cu > img[y + 1, x - 1]:
                    code |= 32
                if cu > img[y + 1, x]:
                    code |= 64
                if cu > img[y + 1, x + 1]:
                    code |= 128
                counts[lut[code]] += 1
    elif radius == 2:
        for y in range(2, h - 2):
            for x in range(2, w - 2):
                c = <double> img[y, x]
                code = 0
                # k=0: (+2, 0)
                if c > <double> img[y, x + 2]:
                    code |= 1
                # k=1: diagonal (+sqrt2, -sqrt2)
                v = (W_NN * <double> img[y - 1, x + 1]
                     + W_FF * <double> img[y - 2, x + 2]) \
                    + W_NF * (<double> img[y - 2, x + 1]
                              + <double> img[y - 1, x + 2])
                if c > v:
                    code |= 2
                # k=2: (0, -2)
                if c > <double> img[y - 2, x]:
                    code |= 4
                # k=3: diagonal (-sqrt2, -sqrt2)
                v = (W_NN * <double> img[y - 1, x - 1]
                     + W_FF * <double> img[y - 2, x - 2]) \
                    + W_NF * (<double> img[y - 2, x - 1]
                              + <double> img[y - 1, x - 2])
                if c > v:
                    code |= 8
                # k=4: (-2, 0)
                if c > <double> img[y, x - 2]:
                    code |= 16
                # k=5: diagonal (-sqrt2, +sqrt2)
                v = (W_NN * <double> img[y + 1, x - 1]
                     + W_FF * <double> img[y + 2, x - 2]) \
                    + W_NF * (<double> img[y + 2, x - 1]
                              + <double> img[y + 1, x - 2])
                if c > v:
                    code |= 32
                # k=6: (0, +2)
                if c > <double> img[y + 2, x]:
                    code |= 64
                # k=7: diagonal (+sqrt2, +sqrt2)
                v = (W_NN * <double> img[y + 1, x + 1]
                     + W_FF * <double> img[y + 2, x + 2]) \
                    + W_NF * (<double> img[y + 2, x + 1]
                              + <double> img[y + 1, x + 2])
                if c > v:
                    code |= 128
                counts[lut[code]] += 1
    else:
        raise ValueError(f"radius must be 1 or 2, got {radius}")

    return counts_arr
