"""Fixture polygons shared across the test suite.

All fixtures are valid CCW orthogonal polygons in general position,
hanging downward from their topmost edge so that the window partition
starts from a natural base.
"""

from __future__ import annotations

import random

from chromguard import spikes
from chromguard.geometry import OrthoPolygon, Point, validate


def poly(*pts) -> OrthoPolygon:
    return OrthoPolygon([Point(x, y) for x, y in pts])


def histogram(heights) -> OrthoPolygon:
    """Columns of width 1 hanging from the segment y = 0."""
    n = len(heights)
    pts = [(0, 0), (0, -heights[0])]
    for k in range(1, n):
        pts.append((k, -heights[k - 1]))
        pts.append((k, -heights[k]))
    pts.append((n, -heights[-1]))
    pts.append((n, 0))
    return poly(*pts)


def staircase(steps: int) -> OrthoPolygon:
    return histogram(list(range(steps, 0, -1)))


RECTANGLE = poly((0, 0), (0, -2), (6, -2), (6, 0))

L_SHAPE = poly((0, 0), (0, -4), (2, -4), (2, -2), (4, -2), (4, 0))

SPIRAL = poly((0, 0), (0, -6), (8, -6), (8, -1), (6, -1), (6, -4),
              (2, -4), (2, -2), (4, -2), (4, 0))

DEEP_SPIRAL = poly((0, 0), (0, -8), (12, -8), (12, -1), (4, -1), (4, -5),
                   (6, -5), (6, -3), (10, -3), (10, -6), (2, -6), (2, 0))

# A narrow corridor with one pocket to each side at different depths.
TWO_POCKETS = poly((4, 0), (4, -1), (2, -1), (2, -3), (4, -3), (4, -5),
                   (6, -5), (6, -4), (8, -4), (8, -2), (6, -2), (6, 0))


def random_histograms(count: int, seed: int = 20260823):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(4, 9)
        heights = [rng.randint(1, 6)]
        while len(heights) < n:
            h = rng.randint(1, 6)
            if h != heights[-1]:
                heights.append(h)
        cand = histogram(heights)
        if validate(cand).ok:
            out.append(cand)
    return out


def fixtures() -> list[OrthoPolygon]:
    out = [
        RECTANGLE,
        L_SHAPE,
        SPIRAL,
        DEEP_SPIRAL,
        TWO_POCKETS,
        staircase(3),
        staircase(5),
        staircase(7),
        histogram([2, 5, 1, 4, 2]),
        histogram([1, 3, 1, 3, 1, 3, 1]),
    ]
    out.extend(spikes.gen_spike(m) for m in range(1, 5))
    out.extend(random_histograms(8))
    return out
