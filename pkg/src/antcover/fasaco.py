"""Velocity cohorts and the multi-velocity colony loop.

The colony is split into cohorts that each move a fixed number of cells per
step.  Cohorts run in schedule order over one shared pheromone field, and the
best tour so far is reinforced after every cohort.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .colony import (
    SolverParams,
    Tour,
    TourHook,
    _kernel_tour,
    eta_powers,
    reachable_count,
    resolve_start,
)
from .gridmap import DELTAS, CellCoord, Direction, GridError, OccupancyGrid
from .pheromone import ParameterError, PheromoneField, global_deposit


class MoveRejected(RuntimeError):
    """The first cell in the requested direction is blocked."""


@dataclass(frozen=True)
class VelocitySchedule:
    """How the colony is divided into velocity cohorts.

    ``kind`` is one of ``constant``, ``increasing``, ``decreasing`` or
    ``custom``.  For the first three, ``velocities`` lists the cohort
    velocities in run order and ants are shared out evenly; ``custom`` also
    fixes the ant count per cohort in ``counts``.
    """

    kind: str
    velocities: tuple[int, ...]
    counts: tuple[int, ...] | None = None

    def __post_init__(self):
        if not self.velocities or any(v < 1 for v in self.velocities):
            raise ParameterError("velocities must all be >= 1")
        if self.counts is not None and (
            len(self.counts) != len(self.velocities) or any(c < 1 for c in self.counts)
        ):
            raise ParameterError("custom cohorts need one positive ant count per velocity")

    @classmethod
    def constant(cls, v: int) -> "VelocitySchedule":
        return cls("constant", (v,))

    @classmethod
    def increasing(cls, lo: int = 1, hi: int = 8) -> "VelocitySchedule":
        if lo > hi:
            raise ParameterError("increasing schedule needs lo <= hi")
        return cls("increasing", tuple(range(lo, hi + 1)))

    @classmethod
    def decreasing(cls, hi: int = 8, lo: int = 1) -> "VelocitySchedule":
        if lo > hi:
            raise ParameterError("decreasing schedule needs hi >= lo")
        return cls("decreasing", tuple(range(hi, lo - 1, -1)))

    @classmethod
    def custom(cls, pairs) -> "VelocitySchedule":
        pairs = list(pairs)
        return cls("custom", tuple(int(v) for v, _ in pairs), tuple(int(n) for _, n in pairs))

    @classmethod
    def parse(cls, text: str) -> "VelocitySchedule":
        """Parse ``constant:v``, ``increasing:a..b``, ``decreasing:b..a`` or ``v:n,v:n,...``."""
        s = text.strip().lower()
        m = re.fullmatch(r"constant:(\d+)", s)
        if m:
            return cls.constant(int(m.group(1)))
        m = re.fullmatch(r"(increasing|decreasing):(\d+)\.\.(\d+)", s)
        if m:
            a, b = int(m.group(2)), int(m.group(3))
            return cls.increasing(a, b) if m.group(1) == "increasing" else cls.decreasing(a, b)
        m = re.fullmatch(r"(?:custom:)?(\d+:\d+(?:,\d+:\d+)*)", s)
        if m:
            return cls.custom(tuple(map(int, p.split(":"))) for p in m.group(1).split(","))
        raise ParameterError(f"unrecognised velocity schedule {text!r}")

    @property
    def label(self) -> str:
        v = self.velocities
        if self.kind == "constant":
            return f"constant:{v[0]}"
        if self.kind in ("increasing", "decreasing"):
            return f"{self.kind}:{v[0]}..{v[-1]}"
        return ",".join(f"{a}:{b}" for a, b in zip(v, self.counts))

    def cohorts(self, ants: int) -> list[tuple[int, int]]:
        return split_cohorts(ants, self)


def split_cohorts(ants: int, schedule: VelocitySchedule) -> list[tuple[int, int]]:
    """(velocity, ant count) per cohort; the remainder goes to the earliest cohorts."""
    if schedule.counts is not None:
        if sum(schedule.counts) != ants:
            raise ParameterError(f"custom cohort sizes sum to {sum(schedule.counts)}, expected {ants}")
        return list(zip(schedule.velocities, schedule.counts))
    n = len(schedule.velocities)
    if ants < n:
        raise ParameterError(f"{ants} ants cannot fill {n} cohorts")
    size, extra = divmod(ants, n)
    return [(v, size + (1 if c < extra else 0)) for c, v in enumerate(schedule.velocities)]


@dataclass(frozen=True)
class FastMove:
    direction: Direction
    requested_velocity: int
    traversed: tuple[CellCoord, ...]
    truncated: bool

    @property
    def landing(self) -> CellCoord:
        return self.traversed[-1]


def fast_move(grid: OccupancyGrid, src: CellCoord, direction: Direction | int, v: int) -> FastMove:
    """Advance up to ``v`` cells in a straight line, stopping before any blocked cell."""
    if v < 1:
        raise ParameterError("velocity must be >= 1")
    if not grid.is_free(src):
        raise GridError(f"fast move must start on a free cell, got {tuple(src)}")
    direction = Direction(direction)
    di, dj = DELTAS[direction]
    cells = []
    i, j = src
    for _ in range(v):
        i, j = i + di, j + dj
        if not grid.is_free((i, j)):
            break
        cells.append(CellCoord(i, j))
    if not cells:
        raise MoveRejected(f"{direction.name.lower()} from {tuple(src)} is blocked")
    return FastMove(direction, v, tuple(cells), len(cells) < v)


def run_fasaco(
    grid: OccupancyGrid,
    params: SolverParams,
    schedule: VelocitySchedule,
    rng: np.random.Generator | None = None,
    start: CellCoord | None = None,
    fld: PheromoneField | None = None,
    on_tour: TourHook | None = None,
) -> Tour:
    """Run every cohort in schedule order and return the shortest tour found."""
    cohorts = split_cohorts(params.ants, schedule)
    rng = params.rng() if rng is None else rng
    fld = PheromoneField.for_grid(grid, params.tau0) if fld is None else fld
    start = resolve_start(grid, start)
    start_k = grid.offset(start)
    target = reachable_count(grid, start)
    etas = {v: eta_powers(v, params.beta) for v, _ in cohorts}
    best = None
    for _ in range(params.iterations):
        for velocity, count in cohorts:
            eta = etas[velocity]
            for _ in range(count):
                offs = _kernel_tour(grid, fld, start_k, velocity, params, rng, target, eta)
                if on_tour is not None:
                    on_tour(velocity, Tour(offs, grid.rows, grid.cols))
                if best is None or len(offs) < len(best):
                    best = offs
            global_deposit(fld, Tour(best, grid.rows, grid.cols), params.alpha, params.quality)
    return Tour(best, grid.rows, grid.cols)
