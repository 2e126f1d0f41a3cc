"""SVG figures: coverage paths with heading arrows, and pheromone heat maps."""
from __future__ import annotations

import numpy as np

from .colony import Tour
from .gridmap import GridError, OccupancyGrid
from .pheromone import PheromoneField

CELL = 12


def _header(grid: OccupancyGrid) -> list[str]:
    w, h = grid.cols * CELL, grid.rows * CELL
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        f'<rect class="background" x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>',
    ]


def _cells(grid: OccupancyGrid) -> list[str]:
    out = []
    for (r, c), p in np.ndenumerate(grid.probs):
        if p >= 0.5:
            cls, fill = ("occupied", "#303030") if p != 0.5 else ("unknown", "#b8b8b8")
            out.append(f'<rect class="{cls}" x="{c * CELL}" y="{r * CELL}" width="{CELL}" height="{CELL}" fill="{fill}"/>')
    return out


def _center(k: int, cols: int) -> tuple[float, float]:
    r, c = divmod(k, cols)
    return c * CELL + CELL / 2, r * CELL + CELL / 2


def render_svg(grid: OccupancyGrid, tour: Tour | None) -> str:
    """Map with the path as a blue polyline and a red arrowhead at every cell entry."""
    parts = _header(grid) + _cells(grid)
    offs = [] if tour is None else tour.offsets.tolist()
    if tour is not None and (tour.rows, tour.cols) != grid.shape:
        raise GridError("tour does not belong to this grid")
    if len(offs) >= 2:
        pts = " ".join("%g,%g" % _center(k, grid.cols) for k in offs)
        parts.append(f'<polyline class="path" points="{pts}" fill="none" stroke="#1f4fd8" stroke-width="2"/>')
        a = CELL * 0.3
        for prev, k in zip(offs, offs[1:]):
            x0, y0 = _center(prev, grid.cols)
            x, y = _center(k, grid.cols)
            dx, dy = (x - x0) / CELL, (y - y0) / CELL
            # triangle pointing along (dx, dy), tip at the entered cell's centre
            bx, by = x - dx * a, y - dy * a
            px, py = -dy * a / 2, dx * a / 2
            parts.append(
                f'<polygon class="arrow" points="{x:g},{y:g} {bx + px:g},{by + py:g} {bx - px:g},{by - py:g}" fill="#d62020"/>'
            )
    if offs:
        x, y = _center(offs[0], grid.cols)
        parts.append(f'<circle class="start" cx="{x:g}" cy="{y:g}" r="{CELL / 4:g}" fill="#1f4fd8"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _shade(v: float) -> str:
    # white -> deep orange
    r = 255
    g = int(round(255 - v * (255 - 90)))
    b = int(round(255 - v * 255))
    return f"#{r:02x}{g:02x}{b:02x}"


def render_pheromone_heatmap(fld: PheromoneField, grid: OccupancyGrid) -> str:
    """Free cells shaded by the summed intensity of their four outgoing edges, min-max scaled."""
    if (fld.rows, fld.cols) != grid.shape:
        raise GridError("pheromone field does not match grid dimensions")
    parts = _header(grid) + _cells(grid)
    totals = fld.cell_totals()
    free = grid.free.reshape(grid.shape).astype(bool)
    if free.any():
        vals = totals[free]
        lo, hi = float(vals.min()), float(vals.max())
        span = hi - lo
        for (r, c), t in np.ndenumerate(totals):
            if not free[r, c]:
                continue
            v = (t - lo) / span if span > 0 else 1.0
            parts.append(
                f'<rect class="heat" x="{c * CELL}" y="{r * CELL}" width="{CELL}" height="{CELL}" '
                f'fill="{_shade(v)}" data-level="{v:.6f}"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
