import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for `oracles`

from udderid.geometry import Box, TeatBox, UdderAnnotation, check_convex_order


@pytest.fixture
def png_writer(tmp_path):
    """Write small RGB or grayscale PNGs for imaging tests."""
    from PIL import Image

    def write(name, pixels, mode="RGB"):
        arr = np.asarray(pixels, dtype=np.uint8)
        path = tmp_path / name
        Image.fromarray(arr, mode=mode).save(path)
        return path

    return write


def random_convex_annotation(rng) -> UdderAnnotation:
    """Random annotation whose teat centers form a convex labeled cycle."""
    while True:
        ox, oy = rng.uniform(100, 300, 2)
        hx, hy = rng.uniform(40, 100, 2)
        centers = {
            "LF": (ox - hx, oy - hy),
            "RF": (ox + hx, oy - hy),
            "RR": (ox + hx, oy + hy),
            "LR": (ox - hx, oy + hy),
        }
        centers = {
            p: (x + rng.uniform(-20, 20), y + rng.uniform(-20, 20))
            for p, (x, y) in centers.items()
        }
        if check_convex_order(centers):
            break
    teats = []
    for p, (cx, cy) in centers.items():
        w, h = rng.uniform(10, 40, 2)
        teats.append(TeatBox(position=p, x=cx - w / 2, y=cy - h / 2, w=w, h=h))
    uw, uh = rng.uniform(200, 380, 2)
    return UdderAnnotation(
        image_ref="synthetic",
        udder_box=Box(x=ox - uw / 2, y=oy - uh / 2, w=uw, h=uh),
        teats=tuple(teats),
    )


def translate_annotation(ann: UdderAnnotation, tx, ty) -> UdderAnnotation:
    return UdderAnnotation(
        image_ref=ann.image_ref,
        udder_box=Box(ann.udder_box.x + tx, ann.udder_box.y + ty,
                      ann.udder_box.w, ann.udder_box.h),
        teats=tuple(
            TeatBox(t.position, t.x + tx, t.y + ty, t.w, t.h)
            for t in ann.teats
        ),
    )


def scale_annotation(ann: UdderAnnotation, s) -> UdderAnnotation:
    return UdderAnnotation(
        image_ref=ann.image_ref,
        udder_box=Box(ann.udder_box.x * s, ann.udder_box.y * s,
                      ann.udder_box.w * s, ann.udder_box.h * s),
        teats=tuple(
            TeatBox(t.position, t.x * s, t.y * s, t.w * s, t.h * s)
            for t in ann.teats
        ),
    )
