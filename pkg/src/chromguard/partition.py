"""Window partition into weak r-visibility polygons and independence classes.

All region computations run on the cell grid; subpolygons are traced from
cell sets only when callers ask for actual vertex lists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import cells as cells_mod
from .cells import CellGrid, CellId
from .geometry import OrthoPolygon, Point, classify_vertices, validate
from .orient import Segment, View, left_of, right_of


@dataclass(frozen=True)
class Window:
    segment: Segment  # inward points into the child region
    side: str  # 'L' | 'R'


@dataclass(frozen=True)
class WeakVisPolygon:
    subpolygon: OrthoPolygon
    base_edge: Segment  # inward points into the subpolygon
    windows: tuple[Window, ...]
    region: frozenset[CellId]
    grid: CellGrid  # grid of the *containing* polygon


@dataclass
class TreeNode:
    id: int
    parent: int | None
    side: str
    depth: int
    wvp: WeakVisPolygon


@dataclass
class VisTree:
    poly: OrthoPolygon
    grid: CellGrid
    nodes: list[TreeNode] = field(default_factory=list)

    @property
    def root(self) -> TreeNode:
        return self.nodes[0]

    def height(self) -> int:
        return max(n.depth for n in self.nodes)


@dataclass(frozen=True)
class IndependenceClasses:
    groups: dict[tuple[int, str], tuple[int, ...]]  # (depth mod 3, side) -> node ids

    def group_of(self, node: TreeNode) -> tuple[int, str]:
        return (node.depth % 3, node.side)


def cells_touching(grid: CellGrid, region: frozenset[CellId], seg: Segment) -> list[CellId]:
    """Region cells whose base-facing side overlaps seg with positive length."""
    view = View.for_segment(grid, seg)
    out = []
    for u in range(view.nu):
        c = view.from_view(u, 0)
        if c not in region:
            continue
        lo, hi = view.u_interval(u)
        if lo < seg.hi and hi > seg.lo:
            out.append(c)
    return out


def visible_from_segment(grid: CellGrid, region: frozenset[CellId], seg: Segment) -> frozenset[CellId]:
    """All region cells r-visible from the base segment.

    Column sweep away from the base with shrinking reach intervals: a cell at
    depth v sees the base iff the intersection of the contiguous region runs
    through its column over depths 0..v still meets the base span.
    """
    view = View.for_segment(grid, seg)
    base_us = set()
    for c in cells_touching(grid, region, seg):
        base_us.add(view.to_view(c)[0])
    if not base_us:
        return frozenset()

    def run(u, v):
        c = view.from_view(u, v)
        if c not in region:
            return None
        lo = u
        while lo > 0 and view.from_view(lo - 1, v) in region:
            lo -= 1
        hi = u
        while hi + 1 < view.nu and view.from_view(hi + 1, v) in region:
            hi += 1
        return lo, hi

    visible = set()
    for u in range(view.nu):
        reach = None
        for v in range(view.nv):
            r = run(u, v)
            if r is None:
                break
            reach = r if v == 0 else (max(reach[0], r[0]), min(reach[1], r[1]))
            if any(reach[0] <= ub <= reach[1] for ub in base_us):
                visible.add(view.from_view(u, v))
            else:
                break
    return frozenset(visible)


def _components(region: set[CellId]) -> list[frozenset[CellId]]:
    todo = set(region)
    comps = []
    while todo:
        seed = todo.pop()
        comp = {seed}
        stack = [seed]
        while stack:
            c = stack.pop()
            for d in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                nb = CellId(c.a + d[0], c.b + d[1])
                if nb in todo:
                    todo.remove(nb)
                    comp.add(nb)
                    stack.append(nb)
        comps.append(frozenset(comp))
    return comps


def _shared_window(grid: CellGrid, q: frozenset[CellId], comp: frozenset[CellId]) -> Segment:
    """The single axis-parallel segment separating comp from q."""
    pieces = []  # (axis, level, lo, hi, inward)
    for c in comp:
        for d in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            nb = CellId(c.a - d[0], c.b - d[1])  # neighbor on the q side
            if nb not in q:
                continue
            x1, x2, y1, y2 = grid.cell_bounds(c)
            if d == (1, 0):
                pieces.append(("v", x1, y1, y2, d))
            elif d == (-1, 0):
                pieces.append(("v", x2, y1, y2, d))
            elif d == (0, 1):
                pieces.append(("h", y1, x1, x2, d))
            else:
                pieces.append(("h", y2, x1, x2, d))
    if not pieces:
        raise ValueError("component does not touch the visibility polygon")
    axes = {(p[0], p[1], p[4]) for p in pieces}
    if len(axes) != 1:
        raise ValueError(f"window is not a single segment: {sorted(axes)}")
    axis, level, inward = pieces[0][0], pieces[0][1], pieces[0][4]
    spans = sorted((p[2], p[3]) for p in pieces)
    lo, hi = spans[0]
    for s_lo, s_hi in spans[1:]:
        if s_lo > hi:
            raise ValueError("window segment is not contiguous")
        hi = max(hi, s_hi)
    return Segment(axis, level, lo, hi, inward)


def region_to_polygon(grid: CellGrid, region: frozenset[CellId]) -> OrthoPolygon:
    """Trace the CCW boundary of a connected union of grid cells."""
    edges: dict[tuple, tuple] = {}
    for c in region:
        x1, x2, y1, y2 = grid.cell_bounds(c)
        if CellId(c.a, c.b - 1) not in region:  # bottom side, interior above
            edges[(x1, y1)] = (x2, y1)
        if CellId(c.a, c.b + 1) not in region:  # top side
            edges[(x2, y2)] = (x1, y2)
        if CellId(c.a - 1, c.b) not in region:  # left side
            edges[(x1, y2)] = (x1, y1)
        if CellId(c.a + 1, c.b) not in region:  # right side
            edges[(x2, y1)] = (x2, y2)
    start = min(edges)
    chain = [start]
    cur = edges.pop(start)
    while cur != start:
        chain.append(cur)
        cur = edges.pop(cur)
    if edges:
        raise ValueError("region boundary is not a single cycle")
    # Merge collinear consecutive vertices.
    out = []
    n = len(chain)
    for i in range(n):
        p, q, r = chain[(i - 1) % n], chain[i], chain[(i + 1) % n]
        if (p[0] == q[0] == r[0]) or (p[1] == q[1] == r[1]):
            continue
        out.append(Point(q[0], q[1]))
    return OrthoPolygon(out)


def highest_base_edge(poly: OrthoPolygon, grid: CellGrid) -> Segment:
    """Leftmost among the highest horizontal edges, looking down."""
    best = None
    for a, b in poly.edges():
        if a.y != b.y:
            continue
        lo, hi = min(a.x, b.x), max(a.x, b.x)
        key = (-a.y, lo)
        if best is None or key < best[0]:
            best = (key, Segment("h", a.y, lo, hi, (0, -1)))
    return best[1]


def _edge_segment(poly: OrthoPolygon, e) -> Segment:
    """Base segment, inward = interior side, from an edge index or point pair."""
    vs = poly.vertices
    if isinstance(e, int):
        a, b = vs[e], vs[(e + 1) % len(vs)]
    else:
        a, b = e
    if a.y == b.y:
        d = (1, 0) if b.x > a.x else (-1, 0)
        return Segment("h", a.y, min(a.x, b.x), max(a.x, b.x), left_of(d))
    d = (0, 1) if b.y > a.y else (0, -1)
    return Segment("v", a.x, min(a.y, b.y), max(a.y, b.y), left_of(d))


def _node_windows(grid, region, q, base) -> list[tuple[Segment, str, frozenset[CellId]]]:
    rest = set(region) - set(q)
    out = []
    for comp in _components(rest):
        seg = _shared_window(grid, q, comp)
        if seg.inward == left_of(base.inward):
            side = "L"
        elif seg.inward == right_of(base.inward):
            side = "R"
        else:
            raise ValueError("window parallel to the line of sight")
        out.append((seg, side, comp))
    out.sort(key=lambda t: (t[0].level, t[0].lo))
    return out


def weak_vis_polygon(poly: OrthoPolygon, e) -> WeakVisPolygon:
    """Maximal subpolygon r-visible from boundary edge e, with its windows."""
    seg = _edge_segment(poly, e)
    if seg.axis != "h":
        raise ValueError("base edge must be horizontal")
    labels = classify_vertices(poly).labels
    vs = poly.vertices
    ends = {(seg.lo, seg.level), (seg.hi, seg.level)}
    for i, p in enumerate(vs):
        if (p.x, p.y) in ends and labels[i] != "convex":
            raise ValueError("base edge endpoints must be convex vertices")
    grid = cells_mod.grid_for(poly)
    region = frozenset(grid.inside_cells())
    q = visible_from_segment(grid, region, seg)
    windows = tuple(
        Window(s, side) for s, side, _ in _node_windows(grid, region, q, seg)
    )
    return WeakVisPolygon(region_to_polygon(grid, q), seg, windows, q, grid)


def window_partition(poly: OrthoPolygon) -> VisTree:
    """Recursive window partition starting from a highest horizontal edge."""
    report = validate(poly)
    if not report.ok:
        raise ValueError(f"invalid polygon: {report.violations}")
    grid = cells_mod.grid_for(poly)
    tree = VisTree(poly, grid)
    region = frozenset(grid.inside_cells())
    base = highest_base_edge(poly, grid)
    stack = [(region, base, None, "L", 0)]
    while stack:
        region, seg, parent, side, depth = stack.pop(0)
        q = visible_from_segment(grid, region, seg)
        windows = _node_windows(grid, region, q, seg)
        node = TreeNode(
            id=len(tree.nodes),
            parent=parent,
            side=side,
            depth=depth,
            wvp=WeakVisPolygon(
                region_to_polygon(grid, q),
                seg,
                tuple(Window(s, sd) for s, sd, _ in windows),
                q,
                grid,
            ),
        )
        tree.nodes.append(node)
        for s, sd, comp in windows:
            stack.append((comp, s, node.id, sd, depth + 1))
    return tree


def independence_classes(tree: VisTree) -> IndependenceClasses:
    groups: dict[tuple[int, str], list[int]] = {}
    for node in tree.nodes:
        groups.setdefault((node.depth % 3, node.side), []).append(node.id)
    return IndependenceClasses({k: tuple(v) for k, v in groups.items()})
