"""Box geometry on an equirectangular panorama.

The horizontal axis is azimuth and wraps modulo the image width: a box may
start near the right edge and spill past it onto the left. Vertical extent
is ordinary.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class PanoramaGeometry:
    width: float
    height: float

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError("panorama dimensions must be positive")


def horizontal_segments(x: float, w: float, width: float) -> list[tuple[float, float]]:
    """A wrap-aware horizontal interval as 1 or 2 plain [start, end) segments."""
    x = x % width
    if x + w <= width:
        return [(x, x + w)]
    return [(x, width), (0.0, x + w - width)]


def _overlap_1d(a: list[tuple[float, float]], b: list[tuple[float, float]]) -> float:
    total = 0.0
    for s1, e1 in a:
        for s2, e2 in b:
            total += max(0.0, min(e1, e2) - max(s1, s2))
    return total


def iou_wrap(box_a, box_b, geometry: PanoramaGeometry) -> float:
    """Intersection-over-union with the horizontal axis taken modulo width."""
    ax, ay, aw, ah = box_a
    bx, by, bw, bh = box_b
    w = geometry.width
    h_inter = _overlap_1d(horizontal_segments(ax, aw, w),
                          horizontal_segments(bx, bw, w))
    v_inter = max(0.0, min(ay + ah, by + bh) - max(ay, by))
    inter = h_inter * v_inter
    union = aw * ah + bw * bh - inter
    if union <= 0.0:
        return 0.0
    return inter / union


def azimuth_of_box(box, geometry: PanoramaGeometry) -> float:
    """Horizontal box center mapped to degrees in [0, 360)."""
    x, _, w, _ = box
    center = (x + w / 2.0) % geometry.width
    return 360.0 * center / geometry.width
