"""Stable seed derivation.

Every randomized step (trial subsets, SVM epoch shuffles, forest bootstraps,
synthetic sessions) derives its RNG seed here, so results are reproducible
from a single master seed and independent of execution order or parallelism.
The hash is SHA-256 over a canonical string, truncated to 64 bits; it does
not depend on numpy RNG internals and is stable across platforms.
"""

import hashlib

import numpy as np


def stable_seed(*parts) -> int:
    """Derive a 64-bit seed from an arbitrary tuple of ints/strings/floats."""
    canon = "\x1f".join(f"{type(p).__name__}:{p!r}" for p in parts)
    digest = hashlib.sha256(canon.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def rng_for(*parts) -> np.random.Generator:
    """A fresh PCG64 generator keyed by the given parts."""
    return np.random.default_rng(stable_seed(*parts))
