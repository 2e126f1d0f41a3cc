"""Pheromone storage on directed unit edges and the two update rules.

Entry ``tau[4*k + d]`` holds the intensity on the edge leaving cell offset ``k``
in direction ``d`` (Up, Down, Left, Right).  The same array serves both
during tour construction and for the end-of-wave deposit on the best tour.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .gridmap import DELTAS, CellCoord, GridError, OccupancyGrid, cell_index


class ParameterError(ValueError):
    pass


def edge_direction(a: CellCoord, b: CellCoord) -> int:
    """Direction index of the unit step a -> b."""
    delta = (b[0] - a[0], b[1] - a[1])
    try:
        return DELTAS.index(delta)
    except ValueError:
        raise GridError(f"cells {tuple(a)} and {tuple(b)} are not 4-adjacent") from None


def check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise ParameterError(f"alpha must lie in (0, 1), got {alpha}")


@dataclass(eq=False)
class PheromoneField:
    rows: int
    cols: int
    tau0: float = 1.0
    tau: np.ndarray | None = None
    initial: float | None = None

    def __post_init__(self):
        if not self.tau0 > 0:
            raise ParameterError("tau0 must be positive")
        if self.tau is None:
            start = self.tau0 if self.initial is None else self.initial
            if not start > 0:
                raise ParameterError("initial pheromone must be positive")
            self.tau = np.full(4 * self.rows * self.cols, float(start))
        else:
            self.tau = np.ascontiguousarray(self.tau, dtype=np.float64)
            if self.tau.shape != (4 * self.rows * self.cols,):
                raise GridError("pheromone array does not match grid dimensions")

    @classmethod
    def for_grid(cls, grid: OccupancyGrid, tau0: float = 1.0, initial: float | None = None) -> "PheromoneField":
        return cls(grid.rows, grid.cols, tau0=tau0, initial=initial)

    def copy(self) -> "PheromoneField":
        return PheromoneField(self.rows, self.cols, self.tau0, self.tau.copy())

    def slot(self, src: CellCoord, dst: CellCoord) -> int:
        d = edge_direction(src, dst)
        for c in (src, dst):
            if not (1 <= c[0] <= self.rows and 1 <= c[1] <= self.cols):
                raise GridError(f"cell {tuple(c)} outside pheromone field")
        return 4 * ((src[0] - 1) * self.cols + src[1] - 1) + d

    def cell_totals(self) -> np.ndarray:
        """Sum of the four outgoing intensities per cell, shape (rows, cols)."""
        return self.tau.reshape(self.rows, self.cols, 4).sum(axis=2)

    def to_csv(self) -> str:
        """Rows of (linear index, direction, intensity), sorted by linear index."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["cell", "direction", "intensity"])
        names = ("up", "down", "left", "right")
        for j in range(1, self.cols + 1):
            for i in range(1, self.rows + 1):
                base = 4 * ((i - 1) * self.cols + j - 1)
                u = cell_index((i, j), self.rows)
                for d in range(4):
                    w.writerow([u, names[d], repr(float(self.tau[base + d]))])
        return buf.getvalue()


def tau(field: PheromoneField, src: CellCoord, dst: CellCoord) -> float:
    return float(field.tau[field.slot(src, dst)])


def local_update(field: PheromoneField, edge: tuple[CellCoord, CellCoord], alpha: float) -> float:
    """Relax one directed edge toward the baseline: tau <- (1-a)*tau + a*tau0."""
    check_alpha(alpha)
    s = field.slot(*edge)
    field.tau[s] = (1.0 - alpha) * field.tau[s] + alpha * field.tau0
    return float(field.tau[s])


def global_deposit(field: PheromoneField, best_tour, alpha: float, quality: float = 1.0) -> PheromoneField:
    """Reinforce every edge of ``best_tour`` with Q / L_best, once per traversal."""
    check_alpha(alpha)
    if not quality > 0:
        raise ParameterError("deposit quality must be positive")
    offsets = np.asarray(best_tour.offsets)
    if offsets.size == 0:
        raise GridError("cannot deposit on an empty tour")
    steps = offsets.size - 1
    if steps == 0:
        return field
    amount = quality / steps
    slots = _edge_slots(offsets, field.cols)
    keep = 1.0 - alpha
    tau_arr = field.tau
    # sequential so a repeated edge is updated once per traversal
    for s in slots.tolist():
        tau_arr[s] = keep * tau_arr[s] + alpha * amount
    return field


def _edge_slots(offsets: np.ndarray, cols: int) -> np.ndarray:
    src = offsets[:-1].astype(np.int64)
    diff = offsets[1:].astype(np.int64) - src
    d = np.full(diff.shape, -1, dtype=np.int64)
    d[diff == -cols] = 0
    d[diff == cols] = 1
    d[diff == -1] = 2
    d[diff == 1] = 3
    if cols == 1:
        # +-1 coincides with +-cols; vertical wins
        d[diff == -1] = 0
        d[diff == 1] = 1
    if np.any(d < 0):
        raise GridError("tour contains a non-adjacent step")
    return 4 * src + d
