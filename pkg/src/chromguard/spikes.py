"""Spike polygon generators, block/wing/depth arithmetic and special points.

The comb S_m has N = 2^m - 1 columns; column k has depth d(m, k) = m - pi2(k)
rows.  All x-coordinates are scaled by 2 so that column midlines and special
points stay integral; visibility is invariant under this uniform scaling.

The stretched variant grows row heights so that line visibility starts to
behave like r-visibility: row 1 has height 1 and row i >= 2 has height
2^((i-1)m) - 2^((i-2)m), making the cumulative depth of row i exactly
2^((i-1)m).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geometry import OrthoPolygon, Point

PLAIN_M_CAP = 16
STRETCHED_M_CAP = 6


@dataclass(frozen=True)
class SpikeSpec:
    m: int
    stretched: bool

    @property
    def ncolumns(self) -> int:
        return 2**self.m - 1


def pi2(k: int) -> int:
    """Multiplicity of the factor 2 in k."""
    if k <= 0:
        raise ValueError("pi2 requires a positive integer")
    r = 0
    while k % 2 == 0:
        k //= 2
        r += 1
    return r


def depth(m: int, k: int) -> int:
    _check_column(m, k)
    return m - pi2(k)


def _check_column(m, k):
    if not 1 <= k <= 2**m - 1:
        raise ValueError(f"column {k} out of range for m={m}")


def block(m: int, k: int) -> range:
    """B(k): all neighbouring columns of depth at least depth(m, k)."""
    _check_column(m, k)
    w = 2 ** pi2(k) - 1
    return range(k - w, k + w + 1)


def block_left(m: int, k: int) -> range:
    _check_column(m, k)
    w = 2 ** pi2(k) - 1
    return range(k - w, k)


def block_right(m: int, k: int) -> range:
    _check_column(m, k)
    w = 2 ** pi2(k) - 1
    return range(k + 1, k + w + 1)


def center_left(m: int, k: int) -> int:
    """l(k), the central column of the left subblock."""
    _check_column(m, k)
    if k % 2 == 1:
        raise ValueError("odd columns have empty subblocks")
    return k - 2 ** (pi2(k) - 1)


def center_right(m: int, k: int) -> int:
    _check_column(m, k)
    if k % 2 == 1:
        raise ValueError("odd columns have empty subblocks")
    return k + 2 ** (pi2(k) - 1)


def quarter_block(m: int, k: int, xy: str) -> range:
    """B_XY(k) for XY in {LL, LR, RL, RR}; empty for odd k or pi2(k) == 1."""
    _check_column(m, k)
    if k % 2 == 1:
        return range(k, k)
    c = center_left(m, k) if xy[0] == "L" else center_right(m, k)
    return block_left(m, c) if xy[1] == "L" else block_right(m, c)


def column_midline_x(k: int) -> int:
    """x of the midline of column k in generator (scaled) coordinates."""
    return 2 * k - 1


def wing(m: int, k: int, p: Point) -> str:
    """"L" if p is strictly left of column k's midline, else "R"."""
    _check_column(m, k)
    return "L" if p.x < column_midline_x(k) else "R"


def row_bottom(m: int, i: int, stretched: bool) -> int:
    """Cumulative depth of row i (a positive number; rows extend downwards)."""
    if i < 1:
        raise ValueError("row index must be >= 1")
    if not stretched:
        return i
    return 2 ** ((i - 1) * m)


def row_height(m: int, i: int, stretched: bool) -> int:
    if i == 1:
        return 1
    return row_bottom(m, i, stretched) - row_bottom(m, i - 1, stretched)


def geometric_depth(m: int, k: int) -> int:
    """d-down(k) = 2^((d(k)-1)m), the stretched depth of column k's floor."""
    return row_bottom(m, depth(m, k), True)


def gen_spike(m: int, stretched: bool = False) -> OrthoPolygon:
    """Generate S_m (or its stretched variant) as a CCW orthogonal polygon."""
    if m < 1:
        raise ValueError("m must be >= 1")
    cap = STRETCHED_M_CAP if stretched else PLAIN_M_CAP
    if m > cap:
        raise ValueError(f"m={m} exceeds practical cap {cap}")
    n_cols = 2**m - 1
    floor = [row_bottom(m, depth(m, k), stretched) for k in range(1, n_cols + 1)]
    pts: list[tuple[int, int]] = [(0, 0), (0, -floor[0])]
    for k in range(1, n_cols):
        x = 2 * k
        pts.append((x, -floor[k - 1]))
        pts.append((x, -floor[k]))
    pts.append((2 * n_cols, -floor[-1]))
    pts.append((2 * n_cols, 0))
    return OrthoPolygon([Point(x, y) for x, y in pts])


def special_point(m: int, i: int, k: int, stretched: bool = True) -> Point:
    """p_{i,k}: midpoint of the lower side of cell R_{i,k}."""
    _check_column(m, k)
    if not 1 <= i <= depth(m, k):
        raise ValueError(f"row {i} out of range for column {k} (m={m})")
    return Point(column_midline_x(k), -row_bottom(m, i, stretched))


def cell_of(m: int, i: int, k: int, stretched: bool):
    """Bounds (x1, x2, y1, y2) of cell R_{i,k} in generator coordinates."""
    _check_column(m, k)
    y_top = -(row_bottom(m, i - 1, stretched) if i > 1 else 0)
    y_bot = -row_bottom(m, i, stretched)
    return (
        Fraction(2 * (k - 1)),
        Fraction(2 * k),
        Fraction(y_bot),
        Fraction(y_top),
    )


def lb_size(t: int, model: str) -> int:
    """Recurrence m(t) for the spike size beating t colors.

    r-model: m(1) = 2, m(t) = 1 + t * m(t-1).
    l-model: m(1) = 3, m(t) = 1 + t * (m(t-1) + 1).
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    if model not in ("r", "l"):
        raise ValueError("model must be 'r' or 'l'")
    value = 2 if model == "r" else 3
    for s in range(2, t + 1):
        value = 1 + s * value if model == "r" else 1 + s * (value + 1)
    return value


def spec_of(poly: OrthoPolygon) -> SpikeSpec | None:
    """Recognize a generated spike polygon, or return None."""
    n = poly.n
    m = n.bit_length() - 2
    if m < 1 or 2 ** (m + 1) != n:
        return None
    for stretched in (False, True):
        if stretched and m > STRETCHED_M_CAP:
            continue
        if gen_spike(m, stretched).vertices == poly.vertices:
            return SpikeSpec(m, stretched)
    return None
