"""Multicolor tableaux: extraction, conformity checking and reductions.

A tableau records, for every cell R_{i,k} of a spike polygon, the multiset
M_{i,k} of guard colors seeing that cell (or its special point in the line
model).  The conformity conditions are combinatorial consequences of a
conflict-free guarding; the staged reduction turns a conform tableau over t
colors into one over t - 1 colors on a sub-block, which drives the
lower-bound recurrences.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace

from . import cells as cells_mod
from . import spikes
from .cells import CellId
from .chromatic import ChromaticGuarding
from .geometry import OrthoPolygon, l_visible
from .spikes import block, block_left, block_right, center_left, center_right, pi2, quarter_block


@dataclass(frozen=True)
class ColorMultiset:
    items: tuple[tuple[int, int], ...]  # (color, multiplicity), sorted

    @classmethod
    def of(cls, colors) -> "ColorMultiset":
        counts = Counter(colors)
        if any(c < 1 for c in counts):
            raise ValueError("colors are positive integers")
        return cls(tuple(sorted(counts.items())))

    def multiplicity(self, c: int) -> int:
        return dict(self.items).get(c, 0)

    @property
    def unique(self) -> frozenset[int]:
        return frozenset(c for c, n in self.items if n == 1)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(c for c, _ in self.items)

    def __contains__(self, c: int) -> bool:
        return self.multiplicity(c) > 0

    def issubset(self, other: "ColorMultiset") -> bool:
        return all(n <= other.multiplicity(c) for c, n in self.items)

    def __len__(self) -> int:
        return sum(n for _, n in self.items)


@dataclass(frozen=True)
class MulticolorTableau:
    m: int  # row parameter: column k has d(k) = m - pi2(k) entries
    mprime: int  # column parameter: 2^mprime - 1 columns
    t: int  # color universe size
    columns: tuple[tuple[ColorMultiset, ...], ...]

    def __post_init__(self):
        if self.mprime > self.m or self.mprime < 1:
            raise ValueError("column parameter must satisfy 1 <= m' <= m")
        if len(self.columns) != 2**self.mprime - 1:
            raise ValueError("wrong number of columns")
        for k, col in enumerate(self.columns, start=1):
            if len(col) != self.depth(k):
                raise ValueError(f"column {k} must have {self.depth(k)} entries")

    def depth(self, k: int) -> int:
        return self.m - pi2(k)

    @property
    def ncolumns(self) -> int:
        return len(self.columns)

    def entry(self, i: int, k: int) -> ColorMultiset:
        return self.columns[k - 1][i - 1]

    def unique(self, i: int, k: int) -> frozenset[int]:
        return self.entry(i, k).unique

    @property
    def standard_form(self) -> bool:
        return self.m == self.mprime


@dataclass(frozen=True)
class Violation:
    prop: int  # 1, 2 or 3
    indices: tuple  # (i, k) or (i, k, c)
    condition: str | None = None  # 'a' | 'b' | 'c' for property 3
    detail: str = ""


def _spike_cell_ids(m: int):
    """Grid CellId of spike cell R_{i,k}: columns left to right, rows top down."""
    return {
        (i, k): CellId(k - 1, m - i)
        for k in range(1, 2**m)
        for i in range(1, m - pi2(k) + 1)
    }


def extract_r(spike_m: int, guarding: ChromaticGuarding) -> MulticolorTableau:
    """Tableau of an r-visibility guarding of S_m: colors seeing each cell."""
    poly = spikes.gen_spike(spike_m)
    if guarding.poly.vertices != poly.vertices:
        raise ValueError("guarding does not belong to this spike polygon")
    grid = cells_mod.grid_for(poly)
    seen: dict[CellId, list[int]] = {c: [] for c in grid.inside_cells()}
    for g, color in zip(guarding.guards, guarding.colors):
        c = grid.cell_of_point(g)
        if c is None:
            raise ValueError(f"guard {g} is not strictly inside a cell")
        for cc in cells_mod.visible_cells(grid, c):
            seen[cc].append(color)
    ids = _spike_cell_ids(spike_m)
    empty = sorted((i, k) for (i, k), cid in ids.items() if not seen[cid])
    if empty:
        raise ValueError(f"cells not covered by any guard: {empty[:5]}")
    cols = tuple(
        tuple(
            ColorMultiset.of(seen[ids[(i, k)]])
            for i in range(1, spike_m - pi2(k) + 1)
        )
        for k in range(1, 2**spike_m)
    )
    return MulticolorTableau(spike_m, spike_m, max(guarding.colors), cols)


def extract_l(stretched_spike_m: int, guarding: ChromaticGuarding) -> MulticolorTableau:
    """Tableau of a line-visibility guarding of stretched S_m, at the
    special points p_{i,k} (midpoints of lower cell sides)."""
    m = stretched_spike_m
    poly = spikes.gen_spike(m, stretched=True)
    if guarding.poly.vertices != poly.vertices:
        raise ValueError("guarding does not belong to this stretched spike")
    cols = []
    for k in range(1, 2**m):
        col = []
        for i in range(1, m - pi2(k) + 1):
            p = spikes.special_point(m, i, k, stretched=True)
            colors = [
                c for g, c in zip(guarding.guards, guarding.colors)
                if l_visible(g, p, poly)
            ]
            if not colors:
                raise ValueError(f"special point p_{{{i},{k}}} sees no guard")
            col.append(ColorMultiset.of(colors))
        cols.append(tuple(col))
    return MulticolorTableau(m, m, max(guarding.colors), tuple(cols))


def _q3(T: MulticolorTableau, i: int, k: int, c: int, j: int):
    """The three-part condition Q(c, k, j); returns (ok, condition, detail)."""
    d_k = T.depth(k)
    if c not in T.entry(i, j):
        return False, "a", f"color {c} missing from M_{{{i},{j}}}"
    if c in T.unique(i, j):
        if d_k + 2 > T.depth(j):
            raise ValueError(f"row {d_k + 2} missing from column {j}")
        if c in T.entry(d_k + 2, j):
            return False, "b", f"color {c} present in M_{{{d_k + 2},{j}}}"
    else:
        for z in "LR":
            half = block_left(T.mprime, j) if z == "L" else block_right(T.mprime, j)
            if all(c not in T.unique(d_k, j2) for j2 in half):
                return True, None, ""
        return False, "c", f"color {c} unique at row {d_k} in both half-blocks of {j}"
    return True, None, ""


def _property3(T: MulticolorTableau, i: int, k: int, c: int):
    """First witness XY for which Q holds on all of B_XY(k), plus failures."""
    failures = []
    for xy in ("LL", "LR", "RL", "RR"):
        ok = True
        for j in quarter_block(T.mprime, k, xy):
            good, cond, detail = _q3(T, i, k, c, j)
            if not good:
                failures.append((xy, j, cond, detail))
                ok = False
                break
        if ok:
            return xy, failures
    return None, failures


def check_conform(T: MulticolorTableau, t: int | None = None) -> Violation | None:
    """None if T is t-conform, else the lexicographically first violation."""
    t = T.t if t is None else t
    for k in range(1, T.ncolumns + 1):
        for i in range(1, T.depth(k) + 1):
            if any(c > t for c in T.entry(i, k).support):
                raise ValueError(f"color outside universe [{t}] at ({i},{k})")

    for k in range(1, T.ncolumns + 1):
        for i in range(1, T.depth(k) + 1):
            if not T.unique(i, k):
                return Violation(1, (i, k), detail="no color of multiplicity 1")
    for k in range(1, T.ncolumns + 1):
        for i in range(1, T.depth(k)):
            if not T.entry(i + 1, k).issubset(T.entry(i, k)):
                return Violation(2, (i, k), detail="deeper entry not included in shallower")
    for i in range(1, T.m + 1):
        for k in range(1, T.ncolumns + 1):
            if i > T.depth(k):
                continue
            for c in sorted(T.unique(i, k)):
                xy, failures = _property3(T, i, k, c)
                if xy is None:
                    cond = failures[0][2] if failures else None
                    return Violation(
                        3, (i, k, c), cond,
                        "; ".join(f"{xy}: j={j} fails ({cc}) {d}"
                                  for xy, j, cc, d in failures),
                    )
    return None


def op_restrict_block(T: MulticolorTableau, k: int) -> MulticolorTableau:
    """Restriction to the block B(k); new column parameter pi2(k) + 1."""
    if not 1 <= k <= T.ncolumns:
        raise ValueError(f"column {k} out of range")
    if k % 2 == 1:
        raise ValueError("restriction needs an even column (nontrivial block)")
    return _restrict(T, k)


def _restrict(T: MulticolorTableau, k: int) -> MulticolorTableau:
    cols = tuple(T.columns[j - 1] for j in block(T.mprime, k))
    return MulticolorTableau(T.m, pi2(k) + 1, T.t, cols)


def op_delete_top_rows(T: MulticolorTableau, m_new: int) -> MulticolorTableau:
    """Drop the top m - m_new rows of every column; new row parameter m_new."""
    if not T.mprime <= m_new <= T.m:
        raise ValueError("new row parameter must lie between m' and m")
    drop = T.m - m_new
    cols = tuple(col[drop:] for col in T.columns)
    return MulticolorTableau(m_new, T.mprime, T.t, cols)


def op_select_columns(T: MulticolorTableau, m_star: int,
                      odd_choices: dict[int, int]) -> MulticolorTableau:
    """Keep columns k·2^{m'−m*} (k even) and one chosen column per odd slot,
    truncated to the new maximal depth m* + m - m'."""
    if not 1 <= m_star <= T.mprime:
        raise ValueError("m* must satisfy 1 <= m* <= m'")
    step = 2 ** (T.mprime - m_star)
    m_new = m_star + T.m - T.mprime
    cols = []
    for k in range(1, 2**m_star):
        if k % 2 == 0:
            old = k * step
        else:
            old = odd_choices[k]
            if not (k - 1) * step < old < (k + 1) * step:
                raise ValueError(f"choice {old} for slot {k} outside its range")
        # Even slots land on columns of exactly the right depth; odd slots
        # lose their entries below the new maximal depth.
        cols.append(tuple(T.columns[old - 1][: m_new - pi2(k)]))
    return MulticolorTableau(m_new, m_star, T.t, tuple(cols))


@dataclass(frozen=True)
class StageRecord:
    stage: int
    col_param: int  # column parameter of the tableau entering the stage
    center: int  # k_s
    excluded: frozenset[int]  # C_{s-1}
    color: int | None = None  # c_s
    witness_xy: str | None = None
    case: str = ""  # 'contradiction' | 'descend' | 'violation' |
    #                 'exhausted' | 'precondition'
    subblock_centers: tuple[int, ...] = ()
    unique_witnesses: tuple[int, ...] = ()  # case 1: one j' per subblock
    descend_center: int | None = None  # case 2: first failing subblock center
    violation: Violation | None = None
    detail: str = ""


@dataclass(frozen=True)
class ReductionTrace:
    t: int
    m_sub: int
    stages: tuple[StageRecord, ...]
    outcome: str
    reduced: MulticolorTableau | None = None


def _stage_geometry(T: MulticolorTableau, xy: str, k_s: int):
    """Quarter block bounds and its width parameter w (width 2^w - 1)."""
    qb = quarter_block(T.mprime, k_s, xy)
    w = T.mprime - 2
    return qb, w


def staged_reduction(T: MulticolorTableau, t: int, m_sub: int) -> ReductionTrace:
    """Replay the staged case analysis that shrinks a t-conform tableau.

    Each stage excludes one color (case 2, descending into a subblock) or
    produces a reduced tableau over the remaining colors (case 1).  All
    choices use the smallest admissible index and are recorded; the returned
    trace has been re-verified claim by claim.
    """
    if not T.standard_form:
        raise ValueError("staged reduction expects a standard-form tableau")
    cur = T
    excluded: frozenset[int] = frozenset()
    records: list[StageRecord] = []

    for stage in range(1, t + 2):
        k_s = 2 ** (cur.mprime - 1)
        base = StageRecord(stage, cur.mprime, k_s, excluded)
        fresh = sorted(cur.unique(1, k_s) - excluded)
        if not fresh:
            records.append(replace(base, case="exhausted",
                                   detail="no unique color left at the center"))
            return _verified(T, t, m_sub, records, "exhausted", None)
        c_s = fresh[0]
        xy, failures = _property3(cur, 1, k_s, c_s)
        if xy is None:
            v = Violation(3, (1, k_s, c_s), failures[0][2] if failures else None)
            records.append(replace(base, color=c_s, case="violation", violation=v))
            return _verified(T, t, m_sub, records, "not conform", None)
        qb, w = _stage_geometry(cur, xy, k_s)
        if w < m_sub:
            records.append(replace(
                base, color=c_s, witness_xy=xy, case="precondition",
                detail=f"quarter block width parameter {w} < target {m_sub}",
            ))
            return _verified(T, t, m_sub, records, "stage precondition failed", None)
        v_par = w - m_sub + 1
        lo = qb[0]
        centers = tuple(lo - 1 + (2 * l - 1) * 2 ** (v_par - 1)
                        for l in range(1, 2 ** (m_sub - 1) + 1))
        witnesses = []
        fail_center = None
        for j_l in centers:
            found = next(
                (j2 for j2 in block(cur.mprime, j_l) if c_s in cur.unique(1, j2)),
                None,
            )
            if found is None:
                fail_center = j_l
                break
            witnesses.append(found)
        if fail_center is None:
            # Case 1: every subblock holds the color uniquely somewhere;
            # carve the reduced tableau out of the quarter block.
            center_half = center_left(cur.mprime, k_s) if xy[0] == "L" \
                else center_right(cur.mprime, k_s)
            center_block = center_left(cur.mprime, center_half) if xy[1] == "L" \
                else center_right(cur.mprime, center_half)
            sub = _restrict(cur, center_block)
            off = qb[0] - block(cur.mprime, center_block)[0]
            assert off == 0
            choices = {
                2 * l - 1: witnesses[l - 1] - (qb[0] - 1)
                for l in range(1, 2 ** (m_sub - 1) + 1)
            }
            sub = op_select_columns(sub, m_sub, choices)
            sub = op_delete_top_rows(sub, m_sub)
            records.append(replace(
                base, color=c_s, witness_xy=xy, case="contradiction",
                subblock_centers=centers, unique_witnesses=tuple(witnesses),
            ))
            return _verified(T, t, m_sub, records, "reduced", sub)
        records.append(replace(
            base, color=c_s, witness_xy=xy, case="descend",
            subblock_centers=centers, descend_center=fail_center,
        ))
        cur = _restrict(cur, fail_center) if fail_center % 2 == 0 else \
            MulticolorTableau(cur.m, 1, cur.t, (cur.columns[fail_center - 1],))
        excluded = excluded | {c_s}
    raise AssertionError("staged reduction exceeded t + 1 stages")


def _verified(T, t, m_sub, records, outcome, reduced) -> ReductionTrace:
    trace = ReductionTrace(t, m_sub, tuple(records), outcome, reduced)
    problem = verify_trace(T, trace)
    if problem is not None:
        raise AssertionError(f"trace re-verification failed: {problem}")
    return trace


def verify_trace(T: MulticolorTableau, trace: ReductionTrace) -> str | None:
    """Re-evaluate every claim of a reduction trace; None when all hold."""
    cur = T
    excluded: frozenset[int] = frozenset()
    for rec in trace.stages:
        if rec.col_param != cur.mprime or rec.excluded != excluded:
            return f"stage {rec.stage}: tableau state mismatch"
        k_s = 2 ** (cur.mprime - 1)
        if rec.center != k_s:
            return f"stage {rec.stage}: wrong center"
        fresh = sorted(cur.unique(1, k_s) - excluded)
        if rec.case == "exhausted":
            return None if not fresh else f"stage {rec.stage}: colors remain"
        if not fresh or rec.color != fresh[0]:
            return f"stage {rec.stage}: color choice not minimal"
        if rec.case == "violation":
            xy, _ = _property3(cur, 1, k_s, rec.color)
            return None if xy is None else f"stage {rec.stage}: witness exists"
        ok = all(
            _q3(cur, 1, k_s, rec.color, j)[0]
            for j in quarter_block(cur.mprime, k_s, rec.witness_xy)
        )
        if not ok:
            return f"stage {rec.stage}: recorded witness {rec.witness_xy} fails"
        if rec.case == "precondition":
            return None if cur.mprime - 2 < trace.m_sub else \
                f"stage {rec.stage}: precondition actually holds"
        if rec.case == "contradiction":
            for j_l, j2 in zip(rec.subblock_centers, rec.unique_witnesses):
                if j2 not in block(cur.mprime, j_l) or \
                        rec.color not in cur.unique(1, j2):
                    return f"stage {rec.stage}: witness {j2} for {j_l} fails"
            if trace.reduced is None or not trace.reduced.standard_form \
                    or trace.reduced.mprime != trace.m_sub:
                return "reduced tableau has the wrong shape"
            return None
        if rec.case == "descend":
            bad = all(
                rec.color not in cur.unique(1, j2)
                for j2 in block(cur.mprime, rec.descend_center)
            )
            if not bad:
                return f"stage {rec.stage}: descend block holds the color"
            cur = _restrict(cur, rec.descend_center) \
                if rec.descend_center % 2 == 0 else \
                MulticolorTableau(cur.m, 1, cur.t,
                                  (cur.columns[rec.descend_center - 1],))
            excluded = excluded | {rec.color}
            continue
        return f"stage {rec.stage}: unknown case {rec.case}"
    return "trace ended without a terminal stage"


def to_json_dict(T: MulticolorTableau) -> dict:
    return {
        "m": T.m,
        "mprime": T.mprime,
        "t": T.t,
        "columns": [
            [{str(c): n for c, n in entry.items} for entry in col]
            for col in T.columns
        ],
    }


def from_json_dict(data: dict) -> MulticolorTableau:
    cols = tuple(
        tuple(
            ColorMultiset(tuple(sorted((int(c), int(n)) for c, n in entry.items())))
            for entry in col
        )
        for col in data["columns"]
    )
    return MulticolorTableau(int(data["m"]), int(data["mprime"]), int(data["t"]), cols)
