"""Chromatic guarding of simple orthogonal polygons.

Construction, coloring, verification and refutation of strong and
conflict-free chromatic guardings under r-visibility and line visibility.
"""

from .chromatic import ChromaticGuarding, cf_coloring, strong_coloring
from .geometry import (
    OrthoPolygon,
    Point,
    classify_vertices,
    l_visible,
    point_location,
    r_visible,
    validate,
)
from .search import exists_guarding, min_colors
from .spikes import gen_spike
from .verify import verify_cf, verify_cover, verify_strong

__all__ = [
    "ChromaticGuarding",
    "OrthoPolygon",
    "Point",
    "cf_coloring",
    "classify_vertices",
    "exists_guarding",
    "gen_spike",
    "l_visible",
    "min_colors",
    "point_location",
    "r_visible",
    "strong_coloring",
    "validate",
    "verify_cf",
    "verify_cover",
    "verify_strong",
]
