"""Constants shared by the native and fallback LBP kernels.

The 8 neighbors sit at 45-degree steps counter-clockwise from angle 0
(k=0 points right, y axis down). Radius 1 uses the 8 adjacent pixels.
Radius 2 samples the circle of radius 2: the four axis-aligned points are
exact pixels, the four diagonals (at +-sqrt(2), +-sqrt(2)) are bilinear
blends of their 2x2 pixel cell.

Both kernels must produce bitwise-identical histograms, and histograms must
be bitwise-invariant under exact 90-degree image rotation. The diagonal
blend is therefore written as

    (W_NN * p_near_near + W_FF * p_far_far) + W_NF * (p_near_far + p_far_near)

whose terms map onto each other under a quarter turn, and both kernels use
the exact same weight constants below (the C side is compiled with
-ffp-contract=off so no fused multiply-adds sneak in).
"""

import math

# Fractional offset of the diagonal sample inside its pixel cell.
_FRAC = math.sqrt(2.0) - 1.0

# Bilinear weights: near corner is 1 pixel from the center, far corner 2.
DIAG_W_NN = (1.0 - _FRAC) * (1.0 - _FRAC)
DIAG_W_FF = _FRAC * _FRAC
DIAG_W_NF = _FRAC * (1.0 - _FRAC)

# Radius-1 neighbor offsets (dx, dy) for bits k = 0..7, counter-clockwise.
NEIGHBOR_OFFSETS_R1 = (
    (1, 0),
    (1, -1),
    (0, -1),
    (-1, -1),
    (-1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
)

# Radius-2: even k are exact pixels, odd k are the diagonal signs (sx, sy).
AXIS_OFFSETS_R2 = {0: (2, 0), 2: (0, -2), 4: (-2, 0), 6: (0, 2)}
DIAG_SIGNS_R2 = {1: (1, -1), 3: (-1, -1), 5: (-1, 1), 7: (1, 1)}

N_CLASSES = 36
