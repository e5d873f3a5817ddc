"""Oriented views of a cell grid.

A base segment looks into its region along an inward direction; the sweep
algorithms (weak visibility, truncation) are written once in view
coordinates (u = position across the line of sight, v = depth away from
the base, v = 0 directly behind the base).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cells import CellGrid, CellId

LEFT = {(0, -1): (1, 0), (0, 1): (-1, 0), (1, 0): (0, 1), (-1, 0): (0, -1)}
RIGHT = {v: (-d[0], -d[1]) for v, d in LEFT.items()}


def left_of(direction: tuple[int, int]) -> tuple[int, int]:
    return LEFT[direction]


def right_of(direction: tuple[int, int]) -> tuple[int, int]:
    return RIGHT[direction]


@dataclass(frozen=True)
class Segment:
    """Axis-parallel segment with the direction pointing into its region."""

    axis: str  # 'h' or 'v': orientation of the segment itself
    level: Fraction
    lo: Fraction
    hi: Fraction
    inward: tuple[int, int]

    def length(self) -> Fraction:
        return self.hi - self.lo


@dataclass(frozen=True)
class View:
    grid: CellGrid
    inward: tuple[int, int]
    base_index: int  # grid index of the first cell layer behind the base

    @classmethod
    def for_segment(cls, grid: CellGrid, seg: Segment) -> "View":
        if seg.axis == "h":
            b = grid.ycuts.index(seg.level)
            base_index = b - 1 if seg.inward == (0, -1) else b
        else:
            a = grid.xcuts.index(seg.level)
            base_index = a - 1 if seg.inward == (-1, 0) else a
        return cls(grid, seg.inward, base_index)

    @property
    def ucuts(self):
        return self.grid.xcuts if self.inward[0] == 0 else self.grid.ycuts

    @property
    def nu(self) -> int:
        return len(self.ucuts) - 1

    @property
    def nv(self) -> int:
        dx, dy = self.inward
        if dy == -1:
            return self.base_index + 1
        if dy == 1:
            return self.grid.nrows - self.base_index
        if dx == -1:
            return self.base_index + 1
        return self.grid.ncols - self.base_index

    def to_view(self, c: CellId) -> tuple[int, int]:
        dx, dy = self.inward
        if dy == -1:
            return c.a, self.base_index - c.b
        if dy == 1:
            return c.a, c.b - self.base_index
        if dx == 1:
            return c.b, c.a - self.base_index
        return c.b, self.base_index - c.a

    def from_view(self, u: int, v: int) -> CellId:
        dx, dy = self.inward
        if dy == -1:
            return CellId(u, self.base_index - v)
        if dy == 1:
            return CellId(u, self.base_index + v)
        if dx == 1:
            return CellId(self.base_index + v, u)
        return CellId(self.base_index - v, u)

    def u_interval(self, u: int) -> tuple[Fraction, Fraction]:
        return self.ucuts[u], self.ucuts[u + 1]

    def layer_near_level(self, v: int) -> Fraction:
        """Coordinate (along the depth axis) of layer v's side facing the base."""
        c = self.from_view(0, v)
        dx, dy = self.inward
        if dy == -1:
            return self.grid.ycuts[c.b + 1]
        if dy == 1:
            return self.grid.ycuts[c.b]
        if dx == 1:
            return self.grid.xcuts[c.a]
        return self.grid.xcuts[c.a + 1]

    def layer_far_level(self, v: int) -> Fraction:
        c = self.from_view(0, v)
        dx, dy = self.inward
        if dy == -1:
            return self.grid.ycuts[c.b]
        if dy == 1:
            return self.grid.ycuts[c.b + 1]
        if dx == 1:
            return self.grid.xcuts[c.a + 1]
        return self.grid.xcuts[c.a]

    def segment_at(self, v_level: Fraction, lo: Fraction, hi: Fraction,
                   toward_base: bool) -> Segment:
        """Real segment across the sight line at depth-axis coordinate v_level."""
        axis = "h" if self.inward[0] == 0 else "v"
        inward = (-self.inward[0], -self.inward[1]) if toward_base else self.inward
        return Segment(axis, v_level, lo, hi, inward)
