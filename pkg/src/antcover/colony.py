"""Ant colony tour construction and the classic single-velocity ACO loop."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import _kernel, _pykernel
from .gridmap import CellCoord, GridError, OccupancyGrid, manhattan, reachable
from .pheromone import ParameterError, PheromoneField, check_alpha, global_deposit


class DeadEnd(RuntimeError):
    """No unvisited cell is a candidate for the next move."""


@dataclass(frozen=True)
class SolverParams:
    beta: float = 2.0
    q0: float = 0.9
    alpha: float = 0.1
    tau0: float = 1.0
    ants: int = 1000
    seed: int = 0
    iterations: int = 1
    quality: float = 1.0
    # fast runs halt before an already visited cell; False lets them pass through it
    stop_at_visited: bool = True

    def __post_init__(self):
        if not 0.0 <= self.q0 <= 1.0:
            raise ParameterError(f"q0 must lie in [0, 1], got {self.q0}")
        check_alpha(self.alpha)
        if self.beta < 0:
            raise ParameterError("beta must be non-negative")
        if not self.tau0 > 0:
            raise ParameterError("tau0 must be positive")
        if self.ants < 1 or self.iterations < 1:
            raise ParameterError("ants and iterations must be >= 1")
        if not self.quality > 0:
            raise ParameterError("quality must be positive")
        if not 0 <= self.seed < 2**64:
            raise ParameterError("seed must be a 64-bit unsigned integer")

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


@dataclass(eq=False)
class Tour:
    """Ordered cells entered by one planner, as row-major offsets."""

    offsets: np.ndarray
    rows: int
    cols: int

    def __post_init__(self):
        self.offsets = np.asarray(self.offsets, dtype=np.int32)

    @classmethod
    def from_cells(cls, cells: Sequence[CellCoord], rows: int, cols: int) -> "Tour":
        offs = [(i - 1) * cols + (j - 1) for i, j in cells]
        return cls(np.array(offs, dtype=np.int32), rows, cols)

    @property
    def cells(self) -> list[CellCoord]:
        c = self.cols
        return [CellCoord(k // c + 1, k % c + 1) for k in self.offsets.tolist()]

    @property
    def steps(self) -> int:
        return max(len(self.offsets) - 1, 0)

    def __len__(self):
        return len(self.offsets)

    def __eq__(self, other):
        if not isinstance(other, Tour):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and np.array_equal(self.offsets, other.offsets)

    def is_adjacent(self) -> bool:
        o = self.offsets.astype(np.int64)
        if o.size < 2:
            return True
        di = np.abs(o[1:] // self.cols - o[:-1] // self.cols)
        dj = np.abs(o[1:] % self.cols - o[:-1] % self.cols)
        return bool(np.all(di + dj == 1))


@dataclass
class AntState:
    current: CellCoord
    visited: set = field(default_factory=set)
    tour: list = field(default_factory=list)
    velocity: int = 1

    @classmethod
    def start(cls, at: CellCoord, velocity: int = 1) -> "AntState":
        at = CellCoord(*at)
        return cls(at, {at}, [at], velocity)


def heuristic(src: CellCoord, dst: CellCoord) -> float:
    d = manhattan(src, dst)
    if d == 0:
        raise GridError("heuristic undefined for identical cells")
    return 1.0 / d


def eta_powers(velocity: int, beta: float) -> np.ndarray:
    """``(1/e)**beta`` for landing distance e = 1..velocity (index 0 unused)."""
    out = np.zeros(velocity + 1)
    for e in range(1, velocity + 1):
        out[e] = (1.0 / e) ** beta
    return out


def _candidates(grid: OccupancyGrid, fld: PheromoneField, state: AntState, params: SolverParams):
    cols = grid.cols
    visited = np.zeros(grid.size, dtype=np.uint8)
    for c in state.visited:
        visited[(c[0] - 1) * cols + c[1] - 1] = 1
    cur = grid.offset(state.current)
    return _pykernel.candidates(
        grid.free, grid.rows, cols, fld.tau, cur, state.velocity, eta_powers(state.velocity, params.beta), visited,
        params.stop_at_visited,
    )


def transition_probabilities(
    grid: OccupancyGrid, fld: PheromoneField, state: AntState, params: SolverParams
) -> dict[CellCoord, float]:
    """Proportional selection probabilities over unvisited landing cells."""
    cands = _candidates(grid, fld, state, params)
    if not cands:
        raise DeadEnd(f"no unvisited candidate from {tuple(state.current)}")
    total = sum(c[3] for c in cands)
    return {grid.coord(c[2]): c[3] / total for c in cands}


def select_next(
    grid: OccupancyGrid,
    fld: PheromoneField,
    state: AntState,
    params: SolverParams,
    rng: np.random.Generator,
) -> CellCoord:
    """Pseudo-random-proportional choice of the next landing cell.

    With probability q0 the strongest candidate wins (ties go to the earlier
    direction in Up, Down, Left, Right); otherwise one is sampled in
    proportion to its weight.
    """
    cands = _candidates(grid, fld, state, params)
    if not cands:
        raise DeadEnd(f"no unvisited candidate from {tuple(state.current)}")
    return grid.coord(_pykernel.choose(cands, params.q0, rng.random)[2])


def escape_dead_end(grid: OccupancyGrid, state: AntState) -> list[CellCoord]:
    """BFS path to the nearest unvisited free cell, excluding the current cell.

    An empty list means nothing unvisited is reachable (coverage of the
    component is complete).
    """
    cols = grid.cols
    visited = np.zeros(grid.size, dtype=np.uint8)
    for c in state.visited:
        visited[(c[0] - 1) * cols + c[1] - 1] = 1
    path = _pykernel.escape_path(grid.free, grid.rows, cols, visited, grid.offset(state.current))
    return [grid.coord(k) for k in path]


def reachable_count(grid: OccupancyGrid, start: CellCoord) -> int:
    return len(reachable(grid, start))


def resolve_start(grid: OccupancyGrid, start: CellCoord | None) -> CellCoord:
    if start is None:
        return grid.default_start()
    start = CellCoord(*start)
    if not grid.is_free(start):
        raise GridError(f"start cell {tuple(start)} is not free")
    return start


def _kernel_tour(grid, fld, start_k, velocity, params, rng, target, eta):
    return _kernel.construct_tour(
        grid.free, grid.rows, grid.cols, fld.tau, start_k, velocity, eta,
        params.q0, params.alpha, fld.tau0, rng, target, params.stop_at_visited,
    )


def construct_tour(
    grid: OccupancyGrid,
    fld: PheromoneField,
    params: SolverParams,
    rng: np.random.Generator,
    start: CellCoord | None = None,
    velocity: int = 1,
) -> Tour:
    """One ant's complete coverage tour of the start's component.

    Local pheromone updates are applied to ``fld`` for every unit edge walked.
    """
    if velocity < 1:
        raise ParameterError("velocity must be >= 1")
    start = resolve_start(grid, start)
    target = reachable_count(grid, start)
    offs = _kernel_tour(grid, fld, grid.offset(start), velocity, params, rng, target, eta_powers(velocity, params.beta))
    return Tour(offs, grid.rows, grid.cols)


TourHook = Callable[[int, Tour], None]


def run_aco(
    grid: OccupancyGrid,
    params: SolverParams,
    rng: np.random.Generator | None = None,
    start: CellCoord | None = None,
    fld: PheromoneField | None = None,
    on_tour: TourHook | None = None,
) -> Tour:
    """Classic ACO: K unit-velocity ants per wave, global deposit on the best tour after each wave.

    ``on_tour(velocity, tour)`` is called for every ant's tour.
    """
    rng = params.rng() if rng is None else rng
    fld = PheromoneField.for_grid(grid, params.tau0) if fld is None else fld
    start = resolve_start(grid, start)
    start_k = grid.offset(start)
    target = reachable_count(grid, start)
    eta = eta_powers(1, params.beta)
    best = None
    for _ in range(params.iterations):
        for _ in range(params.ants):
            offs = _kernel_tour(grid, fld, start_k, 1, params, rng, target, eta)
            if on_tour is not None:
                on_tour(1, Tour(offs, grid.rows, grid.cols))
            if best is None or len(offs) < len(best):
                best = offs
        global_deposit(fld, Tour(best, grid.rows, grid.cols), params.alpha, params.quality)
    return Tour(best, grid.rows, grid.cols)
