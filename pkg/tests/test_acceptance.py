"""Acceptance gate: one pass/fail line per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines as they
print; without -s pytest shows them for failing criteria only.
"""

import math
import random
import time

import corpus
from test_cells import brute_inside_cells
from test_lemmas import sample_points
from test_tableau import all_singleton, spike_tableaux

from chromguard import cells as cells_mod, spikes
from chromguard.chromatic import cf_coloring, ruler_sequence, strong_coloring
from chromguard.geometry import l_visible
from chromguard.partition import window_partition
from chromguard.pyramids import decompose
from chromguard.search import exists_guarding, min_colors
from chromguard.tableau import (
    check_conform,
    extract_l,
    extract_r,
    op_delete_top_rows,
    op_restrict_block,
    op_select_columns,
    staged_reduction,
    verify_trace,
)
from chromguard.verify import verify_cf, verify_strong


def report(num, title, ok):
    print(f"criterion {num} [{'PASS' if ok else 'FAIL'}] {title}", flush=True)
    assert ok, f"criterion {num}: {title}"


def test_criterion_1_generator_counts():
    start = time.monotonic()
    ok = True
    for m in range(1, 9):
        poly = spikes.gen_spike(m)
        grid = cells_mod.grid_for(poly)
        inside = set(grid.inside_cells())
        ok &= poly.n == 2 ** (m + 1)
        ok &= len(inside) == (m - 1) * 2**m + 1
        ok &= inside == brute_inside_cells(poly)
    elapsed = time.monotonic() - start
    report(1, f"spike generator vs brute-force grid, m 1..8 ({elapsed:.1f}s)",
           ok and elapsed < 5)


def test_criterion_2_constructive_upper_bounds():
    start = time.monotonic()
    ok = True
    for m in range(1, 9):
        poly = spikes.gen_spike(m)
        g = strong_coloring(poly)
        ok &= g.ncolors == m and verify_strong(poly, g).ok
    for m in range(1, 11):
        poly = spikes.gen_spike(m)
        g = cf_coloring(poly)
        ok &= g.ncolors == math.ceil(math.log2(m + 1))
        ok &= verify_cf(poly, g).ok
        if m == 10:
            ok &= g.ncolors == 4 and len(g.guards) == 1023
    elapsed = time.monotonic() - start
    report(2, f"strong=m (m<=8) and cf=ceil(log2(m+1)) (m<=10), verified "
              f"({elapsed:.1f}s)", ok and elapsed < 30)


def test_criterion_3_exact_minima():
    ok = True
    s1, s2, s3 = (spikes.gen_spike(m) for m in (1, 2, 3))
    for mode in ("strong", "cf"):
        ok &= min_colors(s1, mode).t == 1
        ok &= min_colors(s2, mode).t == 2
    ok &= exists_guarding(s2, 1, "cf").nodes <= 32
    res = min_colors(s3, "strong", budget=600)
    ok &= res.status == "yes" and res.t == 3
    report(3, "exact minima: S_1=1, S_2=2 (cf t=1 in <=32 nodes), "
              "S_3 strong=3", ok)


def test_criterion_4_corpus_verification():
    fixtures = corpus.fixtures()
    ok = len(fixtures) >= 20
    for poly in fixtures:
        strong = strong_coloring(poly)
        cf = cf_coloring(poly)
        ok &= verify_strong(poly, strong).ok and verify_cf(poly, cf).ok
        tree = window_partition(poly)
        h = max(decompose(n.wvp).height() for n in tree.nodes)
        ok &= strong.ncolors <= 6 * h
        ok &= cf.ncolors <= 6 * math.ceil(math.log2(h + 1))
    report(4, f"{len(fixtures)} fixtures verified; counts within 6h and "
              "6*ceil(log2(h+1))", ok)


def test_criterion_5_tableau_machinery():
    ok = True
    # (a) the one-color 3x7 candidate is rejected in under a millisecond
    base = all_singleton(3)
    check_conform(base, 1)  # warm-up
    timings = []
    for _ in range(5):
        t0 = time.perf_counter()
        rejected = check_conform(base, 1) is not None
        timings.append(time.perf_counter() - t0)
    ok &= rejected and min(timings) < 1e-3
    # (b) extracted cf tableaux conform and satisfy the half-block rule
    for m in range(2, 7):
        T = extract_r(m, cf_coloring(spikes.gen_spike(m)))
        ok &= check_conform(T) is None
        ok &= _left_right_rule_holds(T)
    # (c) line-visibility tableaux from stretched combs conform
    for m in range(1, 4):
        T = extract_l(m, cf_coloring(spikes.gen_spike(m, stretched=True)))
        ok &= check_conform(T) is None
    # (d) the three operations preserve conformity on a 50-tableau corpus
    ok &= _operation_regression_clean()
    # (e) recorded reduction traces re-verify claim by claim
    for m, t, m_sub in [(5, 3, 1), (5, 3, 2), (6, 3, 2), (6, 3, 3), (6, 2, 1)]:
        T = extract_r(m, cf_coloring(spikes.gen_spike(m)))
        ok &= verify_trace(T, staged_reduction(T, t, m_sub)) is None
    report(5, "tableaux: 3x7 rejected <1ms; extraction conforms; operations "
              "preserve conformity; traces re-verify", ok)


def _left_right_rule_holds(T):
    def holds(c, k, j):
        if c not in T.entry(1, j):
            return False
        if c in T.unique(1, j):
            return c not in T.entry(T.depth(k) + 1, j)
        return all(c not in T.unique(1, j2)
                   for j2 in spikes.block(T.mprime, j))

    return all(
        any(all(holds(c, k, j) for j in half)
            for half in (spikes.block_left(T.mprime, k),
                         spikes.block_right(T.mprime, k)))
        for k in range(2, T.ncolumns, 2)
        for c in T.unique(1, k)
    )


def _operation_regression_clean():
    rng = random.Random(1805)
    queue = [T for T in spike_tableaux() if check_conform(T) is None]
    produced = 0
    while produced < 50 and queue:
        T = queue.pop(0)
        ops = []
        if T.mprime >= 2:
            ops.append(("restrict",
                        rng.choice(range(2, T.ncolumns + 1, 2))))
            m_star = rng.randint(1, T.mprime - 1)
            step = 2 ** (T.mprime - m_star)
            choices = {
                k: rng.randrange((k - 1) * step + 1, (k + 1) * step, 2)
                for k in range(1, 2**m_star, 2)
            }
            ops.append(("select", m_star, choices))
        if T.m > T.mprime:
            ops.append(("drop", rng.randint(T.mprime, T.m)))
        for op in ops:
            if op[0] == "restrict":
                out = op_restrict_block(T, op[1])
            elif op[0] == "select":
                out = op_select_columns(T, op[1], op[2])
            else:
                out = op_delete_top_rows(T, op[1])
            if check_conform(out) is not None:
                return False
            produced += 1
            if out.ncolumns > 1:
                queue.append(out)
    return produced >= 50


def test_criterion_6_stretched_visibility_laws():
    ok = True
    for m in (2, 3, 4):
        poly = spikes.gen_spike(m, stretched=True)
        rng = random.Random(600 + m)
        pairs = 0
        while pairs < 1000:
            (g,) = sample_points(poly, rng, 1)
            for k in range(2, 2**m - 1, 2):
                d = spikes.depth(m, k)
                near = (spikes.block_left(m, k)
                        if spikes.wing(m, k, g) == "R"
                        else spikes.block_right(m, k))
                for j in near:
                    for i in range(d + 1, spikes.depth(m, j) + 1):
                        ok &= not l_visible(
                            g, spikes.special_point(m, i, j), poly)
                        pairs += 1
        pairs = 0
        while pairs < 1000:
            (g,) = sample_points(poly, rng, 1)
            for k in range(1, 2**m):
                for i in range(1, spikes.depth(m, k) + 1):
                    pairs += 1
                    if not l_visible(g, spikes.special_point(m, i, k), poly):
                        continue
                    ok &= any(
                        all(l_visible(g, spikes.special_point(m, i2, j), poly)
                            for j in half
                            for i2 in range(1, min(i, spikes.depth(m, j)) + 1))
                        for half in (spikes.block_left(m, k),
                                     spikes.block_right(m, k))
                    )
    report(6, "wing-exclusion and half-block-triangle visibility laws, "
              ">=1000 exact pairs each for m in {2,3,4}", ok)


def test_criterion_7_ruler_sequence():
    ok = True
    for m in range(1, 11):
        word = ruler_sequence(m)
        ok &= len(word) == 2**m - 1
        for lo in range(len(word)):
            counts, singles = {}, 0
            for s in word[lo:]:
                counts[s] = counts.get(s, 0) + 1
                if counts[s] == 1:
                    singles += 1
                elif counts[s] == 2:
                    singles -= 1
                ok &= singles > 0
        for k in range(1, len(word) + 1):
            ok &= len(set(word[:k])) <= math.ceil(math.log2(k + 1))
    report(7, "ruler sequence: unique symbol in every subword, logarithmic "
              "prefix alphabet, m<=10", ok)


def test_criterion_8_recurrence_constants():
    ok = spikes.lb_size(2, "r") == 5
    ok &= spikes.lb_size(5, "l") == 651
    for t in range(1, 9):
        ok &= spikes.lb_size(t, "r") <= math.factorial(t + 1)
    for t in range(5, 9):
        ok &= spikes.lb_size(t, "l") <= math.factorial(t + 1)
    report(8, "size recurrences: m(2)=5 rectangular, m(5)=651 line, "
              "factorial bound", ok)
