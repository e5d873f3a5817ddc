"""Window partition trees and weak visibility from a segment."""

import pytest

import corpus
from chromguard import cells as cells_mod, spikes
from chromguard.geometry import Point, r_visible
from chromguard.orient import Segment
from chromguard.partition import (
    independence_classes,
    visible_from_segment,
    weak_vis_polygon,
    window_partition,
)


def brute_visible_from_segment(poly, seg):
    """A cell sees the base iff some base-cell midpoint on the segment sees it."""
    grid = cells_mod.grid_for(poly)
    region = frozenset(grid.inside_cells())
    out = set()
    for c in region:
        rep = grid.representative(c)
        for u in range(len(grid.xcuts) - 1):
            lo = max(seg.lo, grid.xcuts[u])
            hi = min(seg.hi, grid.xcuts[u + 1])
            if lo >= hi:
                continue
            p = Point((lo + hi) / 2, seg.level)
            if r_visible(p, rep, poly):
                out.add(c)
                break
    return out


class TestWeakVisibility:
    def test_matches_pointwise_oracle(self):
        for poly in corpus.fixtures()[:12]:
            grid = cells_mod.grid_for(poly)
            region = frozenset(grid.inside_cells())
            x1, x2, y1, y2 = poly.bbox()
            top = [e for e in poly.edges() if e[0].y == y2 and e[1].y == y2]
            a, b = top[0]
            seg = Segment("h", y2, min(a.x, b.x), max(a.x, b.x), (0, -1))
            assert visible_from_segment(grid, region, seg) == \
                brute_visible_from_segment(poly, seg)

    def test_rectangle_base_sees_all(self):
        w = weak_vis_polygon(corpus.RECTANGLE, (Point(6, 0), Point(0, 0)))
        assert not w.windows
        assert w.region == frozenset(w.grid.inside_cells())

    def test_base_endpoints_must_be_convex(self):
        with pytest.raises(ValueError):
            weak_vis_polygon(corpus.L_SHAPE, (Point(4, -2), Point(2, -2)))


class TestWindowPartition:
    def test_single_node_cases(self):
        for poly in (corpus.RECTANGLE, corpus.L_SHAPE, spikes.gen_spike(4)):
            tree = window_partition(poly)
            assert len(tree.nodes) == 1
            assert tree.root.depth == 0 and tree.root.side == "L"

    def test_regions_partition_the_cells(self):
        for poly in corpus.fixtures():
            tree = window_partition(poly)
            seen = set()
            for node in tree.nodes:
                assert not (seen & node.wvp.region)
                seen |= node.wvp.region
            assert seen == set(tree.grid.inside_cells())

    def test_windows_count_matches_children(self):
        for poly in corpus.fixtures():
            tree = window_partition(poly)
            for node in tree.nodes:
                children = [n for n in tree.nodes if n.parent == node.id]
                assert len(node.wvp.windows) == len(children)

    def test_spiral_chain(self):
        tree = window_partition(corpus.SPIRAL)
        assert [n.depth for n in tree.nodes] == [0, 1, 2]
        assert [n.parent for n in tree.nodes] == [None, 0, 1]

    def test_two_pockets_sides(self):
        tree = window_partition(corpus.TWO_POCKETS)
        sides = sorted(n.side for n in tree.nodes if n.parent == 0)
        assert sides == ["L", "R"]

    def test_node_count_bound(self):
        # every window consumes a reflex vertex, so at most n/2 - 1 children
        for poly in corpus.fixtures():
            tree = window_partition(poly)
            assert len(tree.nodes) <= max(1, poly.n // 2 - 1)


class TestIndependenceClasses:
    def test_at_most_six_groups(self):
        for poly in corpus.fixtures():
            classes = independence_classes(window_partition(poly))
            assert len(classes.groups) <= 6
            ids = [i for g in classes.groups.values() for i in g]
            assert sorted(ids) == list(range(len(ids)))

    def test_group_key_is_depth_mod_3_and_side(self):
        tree = window_partition(corpus.DEEP_SPIRAL)
        classes = independence_classes(tree)
        for node in tree.nodes:
            assert node.id in classes.groups[(node.depth % 3, node.side)]
