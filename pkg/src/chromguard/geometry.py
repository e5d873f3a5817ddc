"""Exact orthogonal polygon geometry and the two visibility predicates.

All coordinates are `fractions.Fraction` over unbounded integers; there is
no floating point anywhere in this package.  Polygon vertices must be
integers, derived points (cell centers, special points) typically have
denominator 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator


def coord(value) -> Fraction:
    """Coerce an int, string ("3" or "3/2") or Fraction to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact coordinate: {value!r}")


@dataclass(frozen=True)
class Point:
    x: Fraction
    y: Fraction

    def __init__(self, x, y):
        object.__setattr__(self, "x", coord(x))
        object.__setattr__(self, "y", coord(y))

    def __iter__(self):
        return iter((self.x, self.y))

    def __repr__(self):
        return f"Point({self.x}, {self.y})"


@dataclass(frozen=True)
class OrthoPolygon:
    """Simple orthogonal polygon, vertices in counterclockwise order."""

    vertices: tuple[Point, ...]

    def __init__(self, vertices: Iterable):
        pts = tuple(
            v if isinstance(v, Point) else Point(v[0], v[1]) for v in vertices
        )
        object.__setattr__(self, "vertices", pts)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edges(self) -> Iterator[tuple[Point, Point]]:
        vs = self.vertices
        for i in range(len(vs)):
            yield vs[i], vs[(i + 1) % len(vs)]

    def bbox(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        xs = [p.x for p in self.vertices]
        ys = [p.y for p in self.vertices]
        return min(xs), max(xs), min(ys), max(ys)


@dataclass(frozen=True)
class VertexClass:
    """Per-vertex convex/reflex labels, aligned with the vertex list."""

    labels: tuple[str, ...]  # "convex" | "reflex"

    @property
    def reflex_count(self) -> int:
        return sum(1 for l in self.labels if l == "reflex")

    @property
    def convex_count(self) -> int:
        return sum(1 for l in self.labels if l == "convex")


@dataclass
class ValidationReport:
    ok: bool
    violations: list[tuple[str, str]] = field(default_factory=list)

    def kinds(self) -> set[str]:
        return {k for k, _ in self.violations}


def _signed_area2(poly: OrthoPolygon) -> Fraction:
    s = Fraction(0)
    vs = poly.vertices
    for i in range(len(vs)):
        a, b = vs[i], vs[(i + 1) % len(vs)]
        s += a.x * b.y - b.x * a.y
    return s


def validate(poly: OrthoPolygon) -> ValidationReport:
    """Check all polygon invariants plus the general-position rule.

    Collects every violation instead of aborting on the first one.  The
    general-position rule is only evaluated once the basic invariants hold,
    since it needs an inside/outside classification of the vertex grid.
    """
    report = ValidationReport(ok=True)

    def bad(kind, detail):
        report.ok = False
        report.violations.append((kind, detail))

    vs = poly.vertices
    if len(vs) == 0:
        raise ValueError("empty vertex list")
    if len(vs) < 4 or len(vs) % 2 != 0:
        bad("non-orthogonal", f"vertex count {len(vs)} not an even number >= 4")
        return report

    for i, p in enumerate(vs):
        if p.x.denominator != 1 or p.y.denominator != 1:
            bad("non-integer", f"vertex {i} has non-integer coordinates")

    # Edge orientations must strictly alternate horizontal/vertical.
    orient = []
    for i in range(len(vs)):
        a, b = vs[i], vs[(i + 1) % len(vs)]
        if a.x == b.x and a.y == b.y:
            bad("non-simple", f"repeated vertex at index {i}")
            return report
        if a.x == b.x:
            orient.append("v")
        elif a.y == b.y:
            orient.append("h")
        else:
            bad("non-orthogonal", f"edge {i} is neither horizontal nor vertical")
            return report
    for i in range(len(vs)):
        if orient[i] == orient[(i + 1) % len(vs)]:
            bad("non-orthogonal", f"edges {i} and {i+1} are collinear or parallel")
    if not report.ok:
        return report

    if not _simple(poly, bad):
        return report

    if _signed_area2(poly) <= 0:
        bad("not-ccw", "vertices are not in counterclockwise order")
        return report

    _check_general_position(poly, bad)
    return report


def _simple(poly: OrthoPolygon, bad) -> bool:
    """Boundary simplicity for an orthogonal edge cycle."""
    vs = poly.vertices
    n = len(vs)
    hs = []  # (y, x1, x2, index)
    vsegs = []  # (x, y1, y2, index)
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        if a.y == b.y:
            hs.append((a.y, min(a.x, b.x), max(a.x, b.x), i))
        else:
            vsegs.append((a.x, min(a.y, b.y), max(a.y, b.y), i))
    ok = True
    for idx in range(len(hs)):
        for jdx in range(idx + 1, len(hs)):
            y1, a1, b1, i = hs[idx]
            y2, a2, b2, j = hs[jdx]
            if y1 == y2 and a1 < b2 and a2 < b1:
                bad("non-simple", f"horizontal edges {i} and {j} overlap")
                ok = False
    for idx in range(len(vsegs)):
        for jdx in range(idx + 1, len(vsegs)):
            x1, a1, b1, i = vsegs[idx]
            x2, a2, b2, j = vsegs[jdx]
            if x1 == x2 and a1 < b2 and a2 < b1:
                bad("non-simple", f"vertical edges {i} and {j} overlap")
                ok = False
    for y, x1, x2, i in hs:
        for x, y1, y2, j in vsegs:
            adjacent = (j - i) % n in (1, n - 1)
            if adjacent:
                continue
            if x1 <= x <= x2 and y1 <= y <= y2:
                # Touching at a shared non-consecutive vertex is still
                # non-simple for a closed boundary.
                bad("non-simple", f"edges {i} and {j} intersect")
                ok = False
    return ok


def classify_vertices(poly: OrthoPolygon) -> VertexClass:
    """Label each vertex convex (interior angle pi/2) or reflex (3pi/2)."""
    vs = poly.vertices
    n = len(vs)
    labels = []
    for i in range(n):
        p, q, r = vs[(i - 1) % n], vs[i], vs[(i + 1) % n]
        cross = (q.x - p.x) * (r.y - q.y) - (q.y - p.y) * (r.x - q.x)
        labels.append("convex" if cross > 0 else "reflex")
    return VertexClass(tuple(labels))


def point_location(p: Point, poly: OrthoPolygon) -> str:
    """Classify p as "inside", "boundary" or "outside" of the closed polygon."""
    for a, b in poly.edges():
        if a.x == b.x:
            if p.x == a.x and min(a.y, b.y) <= p.y <= max(a.y, b.y):
                return "boundary"
        else:
            if p.y == a.y and min(a.x, b.x) <= p.x <= max(a.x, b.x):
                return "boundary"
    # Half-open crossing rule with a horizontal ray towards +x.
    count = 0
    for a, b in poly.edges():
        if a.x == b.x and a.x > p.x:
            ylo, yhi = (a.y, b.y) if a.y < b.y else (b.y, a.y)
            if ylo <= p.y < yhi:
                count += 1
    return "inside" if count % 2 == 1 else "outside"


def in_closed(p: Point, poly: OrthoPolygon) -> bool:
    return point_location(p, poly) != "outside"


def r_visible(p: Point, q: Point, poly: OrthoPolygon) -> bool:
    """True iff the closed axis-parallel rectangle spanned by p and q is in P."""
    from . import cells

    if not in_closed(p, poly) or not in_closed(q, poly):
        raise ValueError("r_visible: point outside the polygon")
    grid = cells.grid_for(poly)
    return cells.rect_in_polygon(
        grid, min(p.x, q.x), max(p.x, q.x), min(p.y, q.y), max(p.y, q.y)
    )


def l_visible(p: Point, q: Point, poly: OrthoPolygon) -> bool:
    """True iff the closed segment pq lies in the closed polygon.

    Exact for orthogonal polygons: inside/outside is constant on each open
    sub-segment between grid-line crossings, so testing one midpoint per
    sub-segment decides the whole segment.
    """
    from . import cells

    if not in_closed(p, poly) or not in_closed(q, poly):
        raise ValueError("l_visible: point outside the polygon")
    if p == q:
        return True
    grid = cells.grid_for(poly)
    dx, dy = q.x - p.x, q.y - p.y
    ts = {Fraction(0), Fraction(1)}
    if dx != 0:
        for c in grid.xcuts:
            t = Fraction(c - p.x, dx)
            if 0 < t < 1:
                ts.add(t)
    if dy != 0:
        for c in grid.ycuts:
            t = Fraction(c - p.y, dy)
            if 0 < t < 1:
                ts.add(t)
    params = sorted(ts)
    for t0, t1 in zip(params, params[1:]):
        tm = (t0 + t1) / 2
        mid = Point(p.x + dx * tm, p.y + dy * tm)
        if point_location(mid, poly) == "outside":
            return False
    return True


def _reflex_extension_dirs(poly, i):
    """Directions of the two incident edges extended past reflex vertex i."""
    vs = poly.vertices
    n = len(vs)
    p, q, r = vs[(i - 1) % n], vs[i], vs[(i + 1) % n]

    def unit(dx, dy):
        return (0 if dx == 0 else (1 if dx > 0 else -1),
                0 if dy == 0 else (1 if dy > 0 else -1))

    return unit(q.x - p.x, q.y - p.y), unit(q.x - r.x, q.y - r.y)


def _check_general_position(poly: OrthoPolygon, bad) -> None:
    """Reflex-reflex chords through int P must span exactly 3 compass dirs."""
    from . import cells

    grid = cells.grid_for(poly)
    labels = classify_vertices(poly).labels
    reflex = [i for i, l in enumerate(labels) if l == "reflex"]

    xi = {x: a for a, x in enumerate(grid.xcuts)}
    yi = {y: b for b, y in enumerate(grid.ycuts)}

    # Run ids per horizontal grid line: consecutive columns where both the
    # cell above and below the line are inside (the line is locally interior).
    h_runs = {}
    for b in range(1, len(grid.ycuts) - 1):
        runs, run_id = [], -1
        prev = False
        for a in range(len(grid.xcuts) - 1):
            open_here = grid.inside[a][b - 1] and grid.inside[a][b]
            if open_here and not prev:
                run_id += 1
            runs.append(run_id if open_here else None)
            prev = open_here
        h_runs[b] = runs
    v_runs = {}
    for a in range(1, len(grid.xcuts) - 1):
        runs, run_id = [], -1
        prev = False
        for b in range(len(grid.ycuts) - 1):
            open_here = grid.inside[a - 1][b] and grid.inside[a][b]
            if open_here and not prev:
                run_id += 1
            runs.append(run_id if open_here else None)
            prev = open_here
        v_runs[a] = runs

    def chord_interior_h(x1, x2, y):
        b = yi[y]
        if b == 0 or b == len(grid.ycuts) - 1:
            return False
        runs = h_runs[b]
        a1, a2 = xi[x1], xi[x2]
        return runs[a1] is not None and runs[a1] == runs[a2 - 1]

    def chord_interior_v(y1, y2, x):
        a = xi[x]
        if a == 0 or a == len(grid.xcuts) - 1:
            return False
        runs = v_runs[a]
        b1, b2 = yi[y1], yi[y2]
        return runs[b1] is not None and runs[b1] == runs[b2 - 1]

    by_y, by_x = {}, {}
    for i in reflex:
        v = poly.vertices[i]
        by_y.setdefault(v.y, []).append(i)
        by_x.setdefault(v.x, []).append(i)

    def check_pair(i, j):
        dirs = set(_reflex_extension_dirs(poly, i)) | set(
            _reflex_extension_dirs(poly, j)
        )
        if len(dirs) != 3:
            bad(
                "general-position",
                f"chord between reflex vertices {i} and {j} spans "
                f"{len(dirs)} compass directions",
            )

    for y, idxs in by_y.items():
        idxs = sorted(idxs, key=lambda i: poly.vertices[i].x)
        for a in range(len(idxs)):
            for b in range(a + 1, len(idxs)):
                i, j = idxs[a], idxs[b]
                x1, x2 = poly.vertices[i].x, poly.vertices[j].x
                if x1 != x2 and chord_interior_h(x1, x2, y):
                    check_pair(i, j)
    for x, idxs in by_x.items():
        idxs = sorted(idxs, key=lambda i: poly.vertices[i].y)
        for a in range(len(idxs)):
            for b in range(a + 1, len(idxs)):
                i, j = idxs[a], idxs[b]
                y1, y2 = poly.vertices[i].y, poly.vertices[j].y
                if y1 != y2 and chord_interior_v(y1, y2, x):
                    check_pair(i, j)
