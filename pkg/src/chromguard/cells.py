"""Vertex-grid refinement of an orthogonal polygon and cell-level r-visibility.

The full vertex grid over-refines the canonical r-visibility arrangement,
which is harmless for correctness: every per-point property checked on all
inside cell representatives covers every r-visibility equivalence class.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .geometry import OrthoPolygon, Point


@dataclass(frozen=True)
class CellId:
    a: int  # column index into xcuts
    b: int  # row index into ycuts


@dataclass(frozen=True)
class CellGrid:
    poly: OrthoPolygon
    xcuts: tuple[Fraction, ...]
    ycuts: tuple[Fraction, ...]
    inside: tuple[tuple[bool, ...], ...]  # inside[a][b]

    @property
    def ncols(self) -> int:
        return len(self.xcuts) - 1

    @property
    def nrows(self) -> int:
        return len(self.ycuts) - 1

    def is_inside(self, a: int, b: int) -> bool:
        return 0 <= a < self.ncols and 0 <= b < self.nrows and self.inside[a][b]

    def inside_cells(self) -> list[CellId]:
        return [
            CellId(a, b)
            for a in range(self.ncols)
            for b in range(self.nrows)
            if self.inside[a][b]
        ]

    def cell_bounds(self, c: CellId):
        return (
            self.xcuts[c.a],
            self.xcuts[c.a + 1],
            self.ycuts[c.b],
            self.ycuts[c.b + 1],
        )

    def representative(self, c: CellId) -> Point:
        x1, x2, y1, y2 = self.cell_bounds(c)
        return Point((x1 + x2) / 2, (y1 + y2) / 2)

    def cell_of_point(self, p: Point) -> CellId | None:
        """The cell whose open interior contains p, or None if p is on a grid line."""
        a = _interval_index(self.xcuts, p.x)
        b = _interval_index(self.ycuts, p.y)
        if a is None or b is None:
            return None
        return CellId(a, b) if self.inside[a][b] else None

    def run(self, a: int, b: int) -> tuple[int, int] | None:
        """Maximal contiguous inside column interval [lo, hi] through (a, b)."""
        if not self.is_inside(a, b):
            return None
        lo = a
        while lo > 0 and self.inside[lo - 1][b]:
            lo -= 1
        hi = a
        while hi + 1 < self.ncols and self.inside[hi + 1][b]:
            hi += 1
        return lo, hi


def _interval_index(cuts, v):
    import bisect

    i = bisect.bisect_right(cuts, v) - 1
    if i < 0 or i >= len(cuts) - 1:
        return None
    if cuts[i] == v:
        return None
    return i


def build_grid(poly: OrthoPolygon) -> CellGrid:
    """Vertex grid with exact inside classification by horizontal scanlines."""
    xcuts = tuple(sorted({p.x for p in poly.vertices}))
    ycuts = tuple(sorted({p.y for p in poly.vertices}))
    verticals = []
    for a, b in poly.edges():
        if a.x == b.x:
            verticals.append((a.x, min(a.y, b.y), max(a.y, b.y)))
    inside = [[False] * (len(ycuts) - 1) for _ in range(len(xcuts) - 1)]
    for bi in range(len(ycuts) - 1):
        ym = (ycuts[bi] + ycuts[bi + 1]) / 2
        crossings = sorted(x for x, ylo, yhi in verticals if ylo < ym < yhi)
        # Crossings pair up into inside intervals.
        for i in range(0, len(crossings) - 1, 2):
            x1, x2 = crossings[i], crossings[i + 1]
            for ai in range(len(xcuts) - 1):
                if x1 <= xcuts[ai] and xcuts[ai + 1] <= x2:
                    inside[ai][bi] = True
    return CellGrid(
        poly,
        xcuts,
        ycuts,
        tuple(tuple(col) for col in inside),
    )


@functools.lru_cache(maxsize=64)
def grid_for(poly: OrthoPolygon) -> CellGrid:
    return build_grid(poly)


def rect_in_polygon(grid: CellGrid, x1, x2, y1, y2) -> bool:
    """Exact test whether the closed rectangle [x1,x2] x [y1,y2] is in closed P.

    Closed P equals the union of the closed inside grid cells, so the
    rectangle is contained iff it stays within that union; degenerate
    rectangles (segments, points) may run along cell boundaries.
    """
    from .geometry import point_location

    xcuts, ycuts = grid.xcuts, grid.ycuts
    if x1 < xcuts[0] or x2 > xcuts[-1] or y1 < ycuts[0] or y2 > ycuts[-1]:
        return False
    if x1 == x2 and y1 == y2:
        return point_location(Point(x1, y1), grid.poly) != "outside"

    def col_range(lo, hi):
        return [
            a
            for a in range(grid.ncols)
            if xcuts[a] < hi and xcuts[a + 1] > lo
        ]

    def row_range(lo, hi):
        return [
            b
            for b in range(grid.nrows)
            if ycuts[b] < hi and ycuts[b + 1] > lo
        ]

    if x1 < x2 and y1 < y2:
        for a in col_range(x1, x2):
            for b in row_range(y1, y2):
                if not grid.inside[a][b]:
                    return False
        return True

    if y1 == y2:  # horizontal segment
        bs = row_range(y1, y1) if y1 not in ycuts else None
        if bs is None:
            b = ycuts.index(y1)
            for a in col_range(x1, x2):
                below = b > 0 and grid.inside[a][b - 1]
                above = b < grid.nrows and grid.inside[a][b]
                if not (below or above):
                    return False
            return True
        b = _interval_index(ycuts, y1)
        return all(grid.inside[a][b] for a in col_range(x1, x2))

    # vertical segment
    if x1 not in xcuts:
        a = _interval_index(xcuts, x1)
        return all(grid.inside[a][b] for b in row_range(y1, y2))
    a = xcuts.index(x1)
    for b in row_range(y1, y2):
        left = a > 0 and grid.inside[a - 1][b]
        right = a < grid.ncols and grid.inside[a][b]
        if not (left or right):
            return False
    return True


def cells_r_visible(c1: CellId, c2: CellId, grid: CellGrid) -> bool:
    """True iff the rectangular hull of the two inside cells is all inside."""
    if not grid.is_inside(c1.a, c1.b) or not grid.is_inside(c2.a, c2.b):
        raise ValueError("cells_r_visible: not an inside cell")
    for a in range(min(c1.a, c2.a), max(c1.a, c2.a) + 1):
        for b in range(min(c1.b, c2.b), max(c1.b, c2.b) + 1):
            if not grid.inside[a][b]:
                return False
    return True


def visible_cells(grid: CellGrid, c: CellId) -> list[CellId]:
    """All inside cells r-visible from cell c.

    Row-by-row sweep with a shrinking column interval; O(rows + output).
    """
    out = []
    for step in (1, -1):
        b = c.b
        interval = grid.run(c.a, b)
        while interval is not None:
            lo, hi = interval
            for a in range(lo, hi + 1):
                if step == 1 or b != c.b:  # emit the home row only once
                    out.append(CellId(a, b))
            b += step
            if not grid.is_inside(c.a, b):
                break
            nxt = grid.run(c.a, b)
            interval = (max(lo, nxt[0]), min(hi, nxt[1]))
    return out


def canonical_cells(grid: CellGrid) -> list[list[CellId]]:
    """Partition inside cells into classes with identical r-visibility."""
    classes: dict[frozenset, list[CellId]] = {}
    for c in grid.inside_cells():
        key = frozenset((v.a, v.b) for v in visible_cells(grid, c))
        classes.setdefault(key, []).append(c)
    return [sorted(v, key=lambda c: (c.a, c.b)) for v in classes.values()]
