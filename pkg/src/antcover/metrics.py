"""Re-coverage count, planning CPU time and coverage completeness."""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass
from typing import Any, Callable

import numpy as np

from .colony import Tour
from .gridmap import OccupancyGrid, reachable


@dataclass(frozen=True)
class CoverageReport:
    n_r: int
    t_o: float
    steps: int
    free_cells: int
    covered: bool

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def recovered_cells(tour: Tour) -> int:
    """Number of distinct cells entered two or more times."""
    offs = np.asarray(tour.offsets)
    if offs.size == 0:
        return 0
    return int(np.count_nonzero(np.bincount(offs) >= 2))


def excess_visits(tour: Tour) -> int:
    """Visits beyond the first, summed over cells."""
    offs = np.asarray(tour.offsets)
    return int(offs.size - np.unique(offs).size)


def measure_cpu_time(fn: Callable[..., Any], *args, **kwargs) -> tuple[Any, float]:
    """Call ``fn`` and return ``(result, process CPU seconds)``."""
    t0 = time.process_time()
    out = fn(*args, **kwargs)
    return out, time.process_time() - t0


def coverage_complete(tour: Tour, grid: OccupancyGrid) -> bool:
    """True iff the tour's cells are exactly the free cells reachable from its first cell."""
    if len(tour) == 0:
        return False
    cells = tour.cells
    if not all(grid.is_free(c) for c in cells):
        return False
    return set(cells) == reachable(grid, cells[0])


def report(tour: Tour, grid: OccupancyGrid, t_o: float) -> CoverageReport:
    free = len(reachable(grid, tour.cells[0])) if len(tour) else 0
    return CoverageReport(
        n_r=recovered_cells(tour),
        t_o=float(t_o),
        steps=tour.steps,
        free_cells=free,
        covered=coverage_complete(tour, grid) and tour.is_adjacent(),
    )
