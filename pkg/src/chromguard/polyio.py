"""JSON serialization for polygons, guardings and tableaux.

Coordinates are stored as exact decimal strings with an optional "/den"
suffix; no floating point ever reaches a file.  Parsers also accept plain
JSON integers, serializers always emit strings.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .chromatic import ChromaticGuarding
from .geometry import OrthoPolygon, Point, coord
from .tableau import MulticolorTableau, from_json_dict, to_json_dict


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def polygon_to_dict(poly: OrthoPolygon) -> dict:
    return {"vertices": [[_fmt(p.x), _fmt(p.y)] for p in poly.vertices]}


def polygon_from_dict(data: dict) -> OrthoPolygon:
    try:
        verts = data["vertices"]
    except (KeyError, TypeError):
        raise ValueError("polygon JSON needs a 'vertices' field") from None
    pts = []
    for i, v in enumerate(verts):
        if not isinstance(v, (list, tuple)) or len(v) != 2:
            raise ValueError(f"vertices[{i}] must be an [x, y] pair")
        pts.append(Point(coord(v[0]), coord(v[1])))
    return OrthoPolygon(pts)


def guarding_to_dict(g: ChromaticGuarding, model: str = "r") -> dict:
    return {
        "model": model,
        "t": g.ncolors,
        "guards": [
            {"x": _fmt(p.x), "y": _fmt(p.y), "color": c}
            for p, c in zip(g.guards, g.colors)
        ],
    }


def guarding_from_dict(data: dict, poly: OrthoPolygon) -> ChromaticGuarding:
    try:
        entries = data["guards"]
    except (KeyError, TypeError):
        raise ValueError("guarding JSON needs a 'guards' field") from None
    guards, colors = [], []
    for i, e in enumerate(entries):
        try:
            guards.append(Point(coord(e["x"]), coord(e["y"])))
            colors.append(int(e["color"]))
        except (KeyError, TypeError, ValueError):
            raise ValueError(f"guards[{i}] needs 'x', 'y' and 'color'") from None
    return ChromaticGuarding(poly, tuple(guards), tuple(colors))


def load_polygon(path: str) -> OrthoPolygon:
    with open(path) as fh:
        return polygon_from_dict(json.load(fh))


def save_polygon(path: str, poly: OrthoPolygon) -> None:
    with open(path, "w") as fh:
        json.dump(polygon_to_dict(poly), fh)
        fh.write("\n")


def load_guarding(path: str, poly: OrthoPolygon) -> ChromaticGuarding:
    with open(path) as fh:
        return guarding_from_dict(json.load(fh), poly)


def save_guarding(path: str, g: ChromaticGuarding, model: str = "r") -> None:
    with open(path, "w") as fh:
        json.dump(guarding_to_dict(g, model), fh)
        fh.write("\n")


def load_tableau(path: str) -> MulticolorTableau:
    with open(path) as fh:
        data = json.load(fh)
    try:
        return from_json_dict(data)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed tableau JSON: {exc}") from None


def save_tableau(path: str, T: MulticolorTableau) -> None:
    with open(path, "w") as fh:
        json.dump(to_json_dict(T), fh)
        fh.write("\n")
