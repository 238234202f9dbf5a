#!/usr/bin/env python3
"""Benchmark the compiled LBP kernel against the numpy fallback.

Usage: python benchmarks/bench_lbp.py [--sizes 128,256,512] [--repeats 5]

Also cross-checks that both paths produce identical counts on every image
they time.
"""

import argparse
import time

import numpy as np

from udderid import _lbp_fallback
from udderid.texture import build_necklace_table

try:
    from udderid import _lbp_kernel
except ImportError:
    _lbp_kernel = None


def time_counts(fn, img, radius, lut, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(img, radius, lut)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="128,256,512")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    lut = build_necklace_table().class_of_code
    rng = np.random.default_rng(0)

    if _lbp_kernel is None:
        print("native kernel not built; timing fallback only")

    header = f"{'size':>6} {'radius':>6} {'fallback':>12}"
    if _lbp_kernel is not None:
        header += f" {'native':>12} {'speedup':>8}"
    print(header)
    for size in sizes:
        img = rng.integers(0, 256, (size, size), dtype=np.uint8)
        for radius in (1, 2):
            t_fb = time_counts(_lbp_fallback.lbp_counts, img, radius, lut,
                               args.repeats)
            line = f"{size:>6} {radius:>6} {t_fb * 1e3:>10.2f}ms"
            if _lbp_kernel is not None:
                t_nat = time_counts(_lbp_kernel.lbp_counts, img, radius, lut,
                                    args.repeats)
                same = np.array_equal(
                    np.asarray(_lbp_kernel.lbp_counts(img, radius, lut)),
                    _lbp_fallback.lbp_counts(img, radius, lut),
                )
                line += f" {t_nat * 1e3:>10.2f}ms {t_fb / t_nat:>7.1f}x"
                if not same:
                    line += "  MISMATCH!"
            print(line)


if __name__ == "__main__":
    main()
