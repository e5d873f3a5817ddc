"""Exhaustive backtracking search for minimum color counts on small polygons.

Guards are restricted to cell representatives (every visibility region is
realized by one of them) with at most one guard per cell and color; both
restrictions lose no generality.  Cells are processed deepest first, and a
cell is finally checked as soon as every cell that could see it has been
decided, which keeps the effective branching far below (2^t)^cells.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import cells as cells_mod
from .chromatic import ChromaticGuarding
from .geometry import OrthoPolygon


@dataclass(frozen=True)
class SearchResult:
    status: str  # "yes" | "no" | "unknown"
    t: int
    witness: ChromaticGuarding | None = None
    nodes: int = 0


class _Space:
    def __init__(self, poly: OrthoPolygon):
        grid = cells_mod.grid_for(poly)
        # Deepest cells first, then left to right: their viewers run out
        # soonest, so contradictions surface near the root of the tree.
        self.order = sorted(grid.inside_cells(), key=lambda c: (c.b, c.a))
        self.grid = grid
        index = {c: i for i, c in enumerate(self.order)}
        self.vis = [
            sorted(index[c] for c in cells_mod.visible_cells(grid, cell))
            for cell in self.order
        ]
        self.vis_mask = [
            sum(1 << j for j in v) for v in self.vis
        ]
        n = len(self.order)
        self.close_at: list[list[int]] = [[] for _ in range(n)]
        for x in range(n):
            self.close_at[max(self.vis[x])].append(x)


def exists_guarding(poly: OrthoPolygon, t: int, mode: str, model: str = "r",
                    budget: float = 60.0) -> SearchResult:
    """Decide whether some t-color guarding of the given kind exists.

    "no" means the pruned enumeration was exhausted; running out of budget
    yields "unknown", never a false negative.
    """
    if model != "r":
        raise ValueError("search supports the r-visibility model only")
    if mode not in ("strong", "cf"):
        raise ValueError("mode must be 'strong' or 'cf'")
    if t < 1:
        raise ValueError("t must be >= 1")
    sp = _Space(poly)
    n = len(sp.order)
    counts = [[0] * t for _ in range(n)]  # visible guards per (cell, color)
    union = [0] * t  # strong mode: union of same-color visibility masks
    chosen = [0] * n  # color subset placed at each decided cell
    deadline = time.monotonic() + budget
    state = {"nodes": 0, "timeout": False}

    def closed_ok(x: int) -> bool:
        row = counts[x]
        if not any(row):
            return False
        if mode == "cf":
            return any(v == 1 for v in row)
        return all(v <= 1 for v in row)

    def place(pos: int, color: int, sign: int) -> None:
        for x in sp.vis[pos]:
            counts[x][color] += sign

    def subsets(used: int):
        """Color subsets with fresh colors taken smallest-first, in order."""
        for mask in range(2**t):
            new = mask >> used
            if new & (new + 1):
                continue  # fresh colors must be a prefix of the unused ones
            yield mask

    def rec(pos: int, used: int) -> bool:
        state["nodes"] += 1
        if state["nodes"] % 4096 == 0 and time.monotonic() > deadline:
            state["timeout"] = True
            return False
        if pos == n:
            return True
        for mask in subsets(used):
            if mode == "strong" and any(
                mask >> i & 1 and union[i] & sp.vis_mask[pos]
                for i in range(t)
            ):
                continue  # a point would see two guards of one color
            placed = [i for i in range(t) if mask >> i & 1]
            for i in placed:
                place(pos, i, +1)
                if mode == "strong":
                    union[i] |= sp.vis_mask[pos]
            chosen[pos] = mask
            if all(closed_ok(x) for x in sp.close_at[pos]):
                nused = max(used, mask.bit_length())
                if rec(pos + 1, nused):
                    return True
            for i in placed:
                place(pos, i, -1)
            if mode == "strong":
                for i in placed:
                    union[i] = 0
                for p in range(pos):
                    for i in range(t):
                        if chosen[p] >> i & 1:
                            union[i] |= sp.vis_mask[p]
            if state["timeout"]:
                return False
        return False

    found = rec(0, 0)
    if found:
        guards, colors = [], []
        for pos, mask in enumerate(chosen):
            for i in range(t):
                if mask >> i & 1:
                    guards.append(sp.grid.representative(sp.order[pos]))
                    colors.append(i + 1)
        witness = ChromaticGuarding(poly, tuple(guards), tuple(colors))
        return SearchResult("yes", t, witness, state["nodes"])
    if state["timeout"]:
        return SearchResult("unknown", t, None, state["nodes"])
    return SearchResult("no", t, None, state["nodes"])


def min_colors(poly: OrthoPolygon, mode: str, model: str = "r",
               budget: float = 60.0, max_t: int | None = None) -> SearchResult:
    """Smallest t admitting a guarding, with a verifiable witness."""
    grid = cells_mod.grid_for(poly)
    cap = max_t if max_t is not None else len(grid.inside_cells())
    for t in range(1, cap + 1):
        res = exists_guarding(poly, t, mode, model, budget)
        if res.status != "no":
            return res
    return SearchResult("no", cap, None)
