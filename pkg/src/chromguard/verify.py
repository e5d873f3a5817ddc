"""Checking chromatic guardings against the covering and coloring rules.

Under r-visibility the grid cells are regions of uniform visibility, so all
three checks run at cell granularity.  Under line visibility the arrangement
argument breaks down; the checks then run on the special points of spike
polygons, the only family for which the line model is needed here.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import cells as cells_mod
from . import spikes
from .chromatic import ChromaticGuarding
from .geometry import OrthoPolygon, Point, l_visible, r_visible


@dataclass(frozen=True)
class Verdict:
    ok: bool
    kind: str  # "ok" | "uncovered" | "strong-conflict" | "no-unique-color"
    witnesses: tuple = ()  # offending points with supporting detail

    def __bool__(self) -> bool:
        return self.ok


def _guard_cell_visibility(poly: OrthoPolygon, guards):
    """Per guard: the set of cells it sees, exact for any guard position.

    A guard strictly inside a cell uses the linear-time sweep; a guard on a
    grid line still sees each open cell uniformly (its coordinates lie on
    grid lines), so a per-cell representative test is exact there too.
    """
    grid = cells_mod.grid_for(poly)
    vis = []
    for g in guards:
        c = grid.cell_of_point(g)
        if c is not None:
            vis.append(cells_mod.visible_cells(grid, c))
        else:
            vis.append(frozenset(
                cc for cc in grid.inside_cells()
                if r_visible(g, grid.representative(cc), poly)
            ))
    return grid, vis


def _seen_colors(poly, guarding):
    grid, vis = _guard_cell_visibility(poly, guarding.guards)
    seen: dict = {c: [] for c in grid.inside_cells()}
    for v, color in zip(vis, guarding.colors):
        for c in v:
            seen[c].append(color)
    return grid, seen


def _l_seen_colors(poly, guarding):
    spec = spikes.spec_of(poly)
    if spec is None:
        raise ValueError("line-model verification is defined on spike polygons")
    seen: dict[Point, list[int]] = {}
    for k in range(1, spec.ncolumns + 1):
        for i in range(1, spikes.depth(spec.m, k) + 1):
            p = spikes.special_point(spec.m, i, k, spec.stretched)
            seen[p] = [
                c for g, c in zip(guarding.guards, guarding.colors)
                if l_visible(g, p, poly)
            ]
    return seen


def _points_and_colors(poly, guarding, model):
    if model == "r":
        grid, seen = _seen_colors(poly, guarding)
        return {grid.representative(c): v for c, v in seen.items()}
    if model == "l":
        return _l_seen_colors(poly, guarding)
    raise ValueError("model must be 'r' or 'l'")


def verify_cover(poly: OrthoPolygon, guarding: ChromaticGuarding,
                 model: str = "r") -> Verdict:
    """Every point of the polygon must see at least one guard."""
    seen = _points_and_colors(poly, guarding, model)
    bad = tuple(
        (p, "sees no guard") for p in sorted(seen, key=lambda p: (p.x, p.y))
        if not seen[p]
    )
    if bad:
        return Verdict(False, "uncovered", bad[:10])
    return Verdict(True, "ok")


def verify_strong(poly: OrthoPolygon, guarding: ChromaticGuarding,
                  model: str = "r") -> Verdict:
    """Covered, and no point sees two guards of the same color."""
    seen = _points_and_colors(poly, guarding, model)
    uncovered = []
    conflicts = []
    for p in sorted(seen, key=lambda p: (p.x, p.y)):
        colors = seen[p]
        if not colors:
            uncovered.append((p, "sees no guard"))
        elif len(set(colors)) < len(colors):
            dup = sorted(c for c in set(colors) if colors.count(c) > 1)
            conflicts.append((p, f"sees color {dup[0]} twice"))
    if uncovered:
        return Verdict(False, "uncovered", tuple(uncovered[:10]))
    if conflicts:
        return Verdict(False, "strong-conflict", tuple(conflicts[:10]))
    return Verdict(True, "ok")


def verify_cf(poly: OrthoPolygon, guarding: ChromaticGuarding,
              model: str = "r") -> Verdict:
    """Covered, and every point sees some color exactly once."""
    seen = _points_and_colors(poly, guarding, model)
    uncovered = []
    clashes = []
    for p in sorted(seen, key=lambda p: (p.x, p.y)):
        colors = seen[p]
        if not colors:
            uncovered.append((p, "sees no guard"))
        elif not any(colors.count(c) == 1 for c in set(colors)):
            clashes.append((p, f"every visible color repeats: {sorted(set(colors))}"))
    if uncovered:
        return Verdict(False, "uncovered", tuple(uncovered[:10]))
    if clashes:
        return Verdict(False, "no-unique-color", tuple(clashes[:10]))
    return Verdict(True, "ok")
