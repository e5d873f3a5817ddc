"""Pyramid truncation of weak visibility polygons and the guard tree."""

from fractions import Fraction

import pytest

import corpus
from chromguard import spikes
from chromguard.partition import window_partition
from chromguard.pyramids import decompose, truncate_once


def spike_wvp(m):
    tree = window_partition(spikes.gen_spike(m))
    assert len(tree.nodes) == 1
    return tree.nodes[0].wvp


class TestTruncateOnce:
    def test_rectangle_is_already_a_pyramid(self):
        tree = window_partition(corpus.RECTANGLE)
        pyramids, residual = truncate_once(tree.nodes[0].wvp)
        assert pyramids == [] and residual is None

    def test_s2_first_round_cuts_the_deep_cells(self):
        wvp = spike_wvp(2)
        pyramids, residual = truncate_once(wvp)
        cut = sorted((c.a, c.b) for p in pyramids for c in p.cells)
        assert cut == [(0, 0), (2, 0)]  # bottom cells of columns 1 and 3
        assert sorted((c.a, c.b) for c in residual) == [(0, 1), (1, 1), (2, 1)]

    def test_pyramids_disjoint_from_residual(self):
        for poly in corpus.fixtures():
            for node in window_partition(poly).nodes:
                pyramids, residual = truncate_once(node.wvp)
                cut = set().union(*(p.cells for p in pyramids)) if pyramids else set()
                if residual is None:
                    assert not cut
                else:
                    assert not (cut & residual)
                    assert cut | residual == set(node.wvp.region)


class TestDecompose:
    @pytest.mark.parametrize("m", range(1, 7))
    def test_spike_gives_complete_binary_tree(self, m):
        gt = decompose(spike_wvp(m))
        assert len(gt.nodes) == 2**m - 1
        assert gt.height() == m
        children = {}
        for i, n in enumerate(gt.nodes):
            children.setdefault(n.parent, []).append(i)
        assert all(len(v) == 2 for k, v in children.items() if k is not None)

    def test_cells_partitioned(self):
        for poly in corpus.fixtures():
            for node in window_partition(poly).nodes:
                gt = decompose(node.wvp)
                seen = set()
                for n in gt.nodes:
                    assert not (seen & n.pyramid.cells)
                    seen |= n.pyramid.cells
                assert seen == set(node.wvp.region)

    def test_parent_strip_contains_child(self):
        for poly in corpus.fixtures():
            for node in window_partition(poly).nodes:
                gt = decompose(node.wvp)
                for n in gt.nodes:
                    if n.parent is None:
                        continue
                    p = gt.nodes[n.parent].pyramid
                    assert p.u_interval[0] <= n.pyramid.u_interval[0]
                    assert n.pyramid.u_interval[1] <= p.u_interval[1]
                    assert p.stage > n.pyramid.stage

    def test_s2_guard_positions(self):
        gt = decompose(spike_wvp(2))
        guards = sorted((g.guard.x, g.guard.y) for g in gt.nodes)
        assert guards == [
            (1, Fraction(-3, 2)),  # cut pyramid of column 1
            (3, Fraction(-1, 2)),  # root strip
            (5, Fraction(-3, 2)),  # cut pyramid of column 3
        ]

    def test_guard_is_inside_its_pyramid(self):
        for poly in corpus.fixtures():
            for node in window_partition(poly).nodes:
                gt = decompose(node.wvp)
                for n in gt.nodes:
                    assert n.guard_cell in n.pyramid.cells
                    grid = node.wvp.grid
                    assert grid.cell_of_point(n.guard) == n.guard_cell

    def test_solid_segment_is_original_boundary(self):
        # the chosen sub-segment of the c-edge lies on the polygon boundary
        for m in range(1, 5):
            wvp = spike_wvp(m)
            gt = decompose(wvp)
            boundary_levels = {p.y for p in wvp.subpolygon.vertices}
            for n in gt.nodes:
                assert n.pyramid.solid_segment.level in boundary_levels
                assert n.pyramid.solid_segment.lo < n.pyramid.solid_segment.hi
