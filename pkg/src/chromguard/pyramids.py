"""Truncation of a weak visibility polygon into pyramids with guard positions.

The truncation runs in view coordinates (u across the line of sight, v =
depth away from the base edge), so the same code serves nodes whose base is
a vertical window.  Floors are cell sides facing away from the base; a floor
endpoint is reflex iff the region continues past it at the same depth.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cells import CellGrid, CellId
from .geometry import Point
from .orient import Segment, View
from .partition import WeakVisPolygon


@dataclass(frozen=True)
class Pyramid:
    cells: frozenset[CellId]
    stage: int
    c_edge: Segment  # deepest floor the pyramid was grown from
    solid_segment: Segment  # part of the c-edge on the original boundary
    base_level: Fraction  # depth-axis coordinate of the cut line
    u_interval: tuple[Fraction, Fraction]  # widest span, at the top layer


@dataclass
class GuardNode:
    pyramid: Pyramid
    guard_cell: CellId
    guard: Point
    parent: int | None = None
    depth: int = 0


@dataclass
class GuardTree:
    wvp: WeakVisPolygon
    nodes: list[GuardNode]

    @property
    def root_index(self) -> int:
        return next(i for i, n in enumerate(self.nodes) if n.parent is None)

    def height(self) -> int:
        return max(n.depth for n in self.nodes)


class _Truncation:
    def __init__(self, wvp: WeakVisPolygon):
        self.wvp = wvp
        self.grid = wvp.grid
        self.view = View.for_segment(wvp.grid, wvp.base_edge)
        self.orig = {self.view.to_view(c) for c in wvp.region}

    def floors(self, current: set) -> list[tuple[int, int, int, bool, bool]]:
        """Maximal floor runs as (v, u1, u2, left_reflex, right_reflex)."""
        floor_cells = {
            (u, v) for (u, v) in current if (u, v + 1) not in current
        }
        runs = []
        for u, v in sorted(floor_cells, key=lambda t: (t[1], t[0])):
            if (u - 1, v) in floor_cells:
                continue
            u2 = u
            while (u2 + 1, v) in floor_cells:
                u2 += 1
            runs.append(
                (v, u, u2, (u - 1, v) in current, (u2 + 1, v) in current)
            )
        return runs

    def sweep(self, current: set, v0: int, u1: int, u2: int) -> set:
        """Grow the pyramid above a c-edge until the first neighboring r-edge."""
        pyr = set()
        lo, hi = u1, u2
        for v in range(v0, -1, -1):
            nlo, nhi = lo, hi
            while (nlo - 1, v) in current:
                nlo -= 1
            while (nhi + 1, v) in current:
                nhi += 1
            added = [
                (u, v) for u in range(nlo, nhi + 1) if u < lo or u > hi
            ]
            if any((u, v + 1) in current for u, _ in added):
                # The widened sweep line crosses a pass: an r-edge at this
                # level stops the cut.
                return pyr
            pyr.update((u, v) for u in range(nlo, nhi + 1))
            lo, hi = nlo, nhi
        return pyr

    def round(self, current: set, stage: int):
        """Cut a pyramid below every c-edge; None when one c-edge is left."""
        runs = self.floors(current)
        c_edges = [r for r in runs if not r[3] and not r[4]]
        if len(c_edges) == 0:
            raise ValueError("weak visibility polygon without a c-edge")
        if len(c_edges) == 1:
            return None
        pyramids = []
        cut = set()
        for v, u1, u2, _, _ in c_edges:
            pyr = self.sweep(current, v, u1, u2)
            if pyr & cut:
                raise AssertionError("pyramids of one round overlap")
            cut |= pyr
            pyramids.append(self.make_pyramid(pyr, stage, v, u1, u2))
        return pyramids, current - cut

    def make_pyramid(self, pyr: set, stage: int, v_c: int, u1: int, u2: int) -> Pyramid:
        view = self.view
        top_v = min(v for _, v in pyr)
        top_us = sorted(u for u, v in pyr if v == top_v)
        c_edge = view.segment_at(
            view.layer_far_level(v_c),
            view.u_interval(u1)[0],
            view.u_interval(u2)[1],
            toward_base=True,
        )
        solid_runs = []
        run = None
        for u in range(u1, u2 + 1):
            if (u, v_c + 1) not in self.orig:
                run = [u, u] if run is None else [run[0], u]
            else:
                if run:
                    solid_runs.append(tuple(run))
                run = None
        if run:
            solid_runs.append(tuple(run))
        if not solid_runs:
            raise AssertionError("pyramid c-edge without a solid segment")
        solid_runs.sort(
            key=lambda r: (-(r[1] - r[0]), r[0])
        )  # longest, then leftmost
        s1, s2 = solid_runs[0]
        solid = view.segment_at(
            view.layer_far_level(v_c),
            view.u_interval(s1)[0],
            view.u_interval(s2)[1],
            toward_base=True,
        )
        return Pyramid(
            cells=frozenset(view.from_view(u, v) for u, v in pyr),
            stage=stage,
            c_edge=c_edge,
            solid_segment=solid,
            base_level=view.layer_near_level(top_v),
            u_interval=(
                view.u_interval(top_us[0])[0],
                view.u_interval(top_us[-1])[1],
            ),
        )

    def final_pyramid(self, current: set, stage: int) -> Pyramid:
        runs = self.floors(current)
        c_edges = [r for r in runs if not r[3] and not r[4]]
        assert len(c_edges) == 1
        v, u1, u2, _, _ = c_edges[0]
        return self.make_pyramid(set(current), stage, v, u1, u2)


def truncate_once(wvp: WeakVisPolygon):
    """One truncation round: (pyramids, residual region) or ([], None) if done."""
    t = _Truncation(wvp)
    current = set(t.orig)
    result = t.round(current, stage=1)
    if result is None:
        return [], None
    pyramids, rest = result
    residual = frozenset(t.view.from_view(u, v) for u, v in rest)
    return pyramids, residual


def decompose(wvp: WeakVisPolygon) -> GuardTree:
    """Iterated truncation; parent = earliest later cut whose span contains."""
    t = _Truncation(wvp)
    current = set(t.orig)
    pyramids: list[Pyramid] = []
    stage = 1
    while True:
        result = t.round(current, stage)
        if result is None:
            pyramids.append(t.final_pyramid(current, stage))
            break
        cut, current = result
        pyramids.extend(cut)
        stage += 1
        if stage > len(t.orig) + 1:
            raise AssertionError("truncation failed to terminate")

    nodes = [
        GuardNode(p, *_guard_of(t.grid, t.view, p)) for p in pyramids
    ]
    for i, node in enumerate(nodes):
        p = node.pyramid
        best = None
        for j, other in enumerate(nodes):
            q = other.pyramid
            if q.stage <= p.stage or i == j:
                continue
            if q.u_interval[0] <= p.u_interval[0] and p.u_interval[1] <= q.u_interval[1]:
                if best is None or q.stage < nodes[best].pyramid.stage:
                    best = j
        node.parent = best
    root = next(i for i, n in enumerate(nodes) if n.parent is None)

    def set_depth(i, d):
        nodes[i].depth = d
        for j, n in enumerate(nodes):
            if n.parent == i:
                set_depth(j, d + 1)

    set_depth(root, 1)
    if any(n.depth == 0 for n in nodes):
        raise AssertionError("guard tree is not connected")
    return GuardTree(wvp, nodes)


def _guard_of(grid: CellGrid, view: View, pyr: Pyramid):
    """Guard cell and point: top-layer cell over the solid-segment midpoint."""
    cells_v = {view.to_view(c) for c in pyr.cells}
    top_v = min(v for _, v in cells_v)
    mid = (pyr.solid_segment.lo + pyr.solid_segment.hi) / 2
    candidates = sorted(u for u, v in cells_v if v == top_v)
    chosen = None
    for u in candidates:
        lo, hi = view.u_interval(u)
        if lo < mid <= hi:  # midpoint on a grid line goes to the lesser cell
            chosen = u
            break
        if lo <= mid < hi and chosen is None:
            chosen = u
    if chosen is None:
        raise AssertionError("solid-segment midpoint outside the pyramid top")
    cell = view.from_view(chosen, top_v)
    return cell, grid.representative(cell)


def guard_position(pyr: Pyramid, wvp: WeakVisPolygon) -> Point:
    view = View.for_segment(wvp.grid, wvp.base_edge)
    return _guard_of(wvp.grid, view, pyr)[1]
