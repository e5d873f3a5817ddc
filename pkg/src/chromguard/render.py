"""Deterministic SVG rendering of polygons, cell grids and colored guards."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import cells as cells_mod
from . import spikes
from .chromatic import ChromaticGuarding
from .geometry import OrthoPolygon

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


@dataclass(frozen=True)
class RenderSpec:
    scale: int = 40
    show_cells: bool = False
    squash_rows: bool = False  # uniform row heights with true depths annotated


def display_color(color_id: int) -> str:
    return PALETTE[(color_id - 1) % len(PALETTE)]


def render(poly: OrthoPolygon, guarding: ChromaticGuarding | None = None,
           spec: RenderSpec = RenderSpec()) -> str:
    annotations = []
    spike = spikes.spec_of(poly)
    if spec.squash_rows and spike is not None and spike.stretched:
        # Draw the plain comb shape; the true geometry only stretches rows.
        m = spike.m
        poly = spikes.gen_spike(m)
        if guarding is not None:
            guarding = None  # guard coordinates would not fit the squashed frame
        annotations = [
            f"row {i}: depth 2^{(i - 1) * m}" for i in range(2, m + 1)
        ]

    s = spec.scale
    x1, x2, y1, y2 = poly.bbox()
    pad = Fraction(1)
    legend_h = 0 if guarding is None else 1
    width = float((x2 - x1 + 2 * pad) * s)
    height = float((y2 - y1 + 2 * pad + legend_h + len(annotations)) * s)

    def tx(x) -> float:
        return float((x - x1 + pad) * s)

    def ty(y) -> float:
        return float((y2 - y + pad) * s)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:g}" '
        f'height="{height:g}" viewBox="0 0 {width:g} {height:g}">',
    ]
    if spec.show_cells:
        grid = cells_mod.grid_for(poly)
        for c in sorted(grid.inside_cells(), key=lambda c: (c.a, c.b)):
            cx1, cx2, cy1, cy2 = grid.cell_bounds(c)
            out.append(
                f'<rect x="{tx(cx1):g}" y="{ty(cy2):g}" '
                f'width="{float((cx2 - cx1) * s):g}" '
                f'height="{float((cy2 - cy1) * s):g}" '
                'fill="none" stroke="#cccccc" stroke-width="1"/>'
            )
    points = " ".join(f"{tx(p.x):g},{ty(p.y):g}" for p in poly.vertices)
    out.append(
        f'<polygon points="{points}" fill="none" stroke="#000000" stroke-width="2"/>'
    )
    if guarding is not None:
        for g, c in zip(guarding.guards, guarding.colors):
            out.append(
                f'<circle cx="{tx(g.x):g}" cy="{ty(g.y):g}" r="{s / 5:g}" '
                f'fill="{display_color(c)}"/>'
            )
            out.append(
                f'<text x="{tx(g.x):g}" y="{ty(g.y) - s / 4:g}" '
                f'font-size="{s / 3:g}" text-anchor="middle">{c}</text>'
            )
        ly = float((y2 - y1 + 2 * pad) * s)
        for i, c in enumerate(sorted(set(guarding.colors))):
            lx = float(pad * s) + i * 2.5 * s
            out.append(
                f'<circle cx="{lx:g}" cy="{ly:g}" r="{s / 5:g}" '
                f'fill="{display_color(c)}"/>'
            )
            out.append(
                f'<text x="{lx + s / 2:g}" y="{ly + s / 8:g}" '
                f'font-size="{s / 3:g}">color {c}</text>'
            )
    for i, note in enumerate(annotations):
        ay = float((y2 - y1 + 2 * pad + legend_h) * s) + i * s
        out.append(
            f'<text x="{float(pad * s):g}" y="{ay:g}" '
            f'font-size="{s / 3:g}">{note}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
