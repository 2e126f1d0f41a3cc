"""Occupancy grid environment, cell indexing and the 4-connected motion model.

Public coordinates are 1-based ``(i, j)`` = (row, column).  Internally the
grid is a flat row-major array addressed by 0-based offsets ``k = i0*cols + j0``;
the planners and kernels work on those offsets.
"""
from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np


class GridError(ValueError):
    """Invalid coordinate, index or grid construction."""


class MapFormatError(ValueError):
    """Malformed map text or image."""


class CellCoord(NamedTuple):
    i: int
    j: int


class Direction(enum.IntEnum):
    UP = 0
    DOWN = 1
    LEFT = 2
    RIGHT = 3


# (di, dj) per direction, in the fixed tie-breaking order
DELTAS = ((-1, 0), (1, 0), (0, -1), (0, 1))


@dataclass(frozen=True)
class MotionModel:
    directions: tuple[Direction, ...] = (Direction.UP, Direction.DOWN, Direction.LEFT, Direction.RIGHT)
    velocity: int = 1


FOUR_CONNECTED = MotionModel()


class CellKind(enum.Enum):
    FREE = "free"
    OCCUPIED = "occupied"
    UNKNOWN = "unknown"
    PROBABILISTIC = "probabilistic"


@dataclass(frozen=True)
class CellState:
    kind: CellKind
    p: float

    @classmethod
    def from_probability(cls, p: float) -> "CellState":
        if not 0.0 <= p <= 1.0:
            raise GridError(f"occupancy probability {p} outside [0, 1]")
        if p == 0.0:
            return cls(CellKind.FREE, p)
        if p == 1.0:
            return cls(CellKind.OCCUPIED, p)
        if p == 0.5:
            return cls(CellKind.UNKNOWN, p)
        return cls(CellKind.PROBABILISTIC, p)

    @property
    def traversable(self) -> bool:
        # probabilistic cells count as free below 0.5
        return self.kind is CellKind.FREE or (self.kind is CellKind.PROBABILISTIC and self.p < 0.5)


@dataclass(frozen=True, eq=False)
class OccupancyGrid:
    """Immutable occupancy grid.

    ``probs`` is stored row-major with shape ``(rows, cols)``.
    """

    probs: np.ndarray
    resolution: float = 0.05
    free: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        probs = np.array(self.probs, dtype=np.float64)
        if probs.ndim != 2 or probs.shape[0] < 1 or probs.shape[1] < 1:
            raise GridError(f"grid must be a non-empty 2-D array, got shape {probs.shape}")
        if np.any(~np.isfinite(probs)) or probs.min() < 0.0 or probs.max() > 1.0:
            raise GridError("occupancy probabilities must lie in [0, 1]")
        if not self.resolution > 0:
            raise GridError("resolution must be positive")
        probs.setflags(write=False)
        free = np.ascontiguousarray((probs < 0.5).astype(np.uint8).ravel())
        free.setflags(write=False)
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "free", free)

    @property
    def rows(self) -> int:
        return self.probs.shape[0]

    @property
    def cols(self) -> int:
        return self.probs.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.probs.shape

    @property
    def size(self) -> int:
        return self.probs.size

    def __eq__(self, other):
        if not isinstance(other, OccupancyGrid):
            return NotImplemented
        return self.resolution == other.resolution and np.array_equal(self.probs, other.probs)

    def __hash__(self):
        return hash((self.shape, self.probs.tobytes(), self.resolution))

    def state(self, at: CellCoord) -> CellState:
        self._check(at)
        return CellState.from_probability(float(self.probs[at[0] - 1, at[1] - 1]))

    def is_free(self, at: CellCoord) -> bool:
        i, j = at
        return 1 <= i <= self.rows and 1 <= j <= self.cols and bool(self.free[(i - 1) * self.cols + j - 1])

    def contains(self, at: CellCoord) -> bool:
        return 1 <= at[0] <= self.rows and 1 <= at[1] <= self.cols

    def _check(self, at: CellCoord) -> None:
        if not self.contains(at):
            raise GridError(f"cell {tuple(at)} outside {self.rows}x{self.cols} grid")

    # -- offsets ----------------------------------------------------------
    def offset(self, at: CellCoord) -> int:
        self._check(at)
        return (at[0] - 1) * self.cols + (at[1] - 1)

    def coord(self, k: int) -> CellCoord:
        return CellCoord(k // self.cols + 1, k % self.cols + 1)

    def free_cells(self) -> list[CellCoord]:
        return [self.coord(int(k)) for k in np.flatnonzero(self.free)]

    def default_start(self) -> CellCoord:
        """(1,1) if free, else the free cell with the smallest linear index."""
        if self.is_free(CellCoord(1, 1)):
            return CellCoord(1, 1)
        free = np.flatnonzero(self.free)
        if free.size == 0:
            raise GridError("grid has no free cell")
        # smallest column-major index
        keys = (free % self.cols) * self.rows + free // self.cols
        return self.coord(int(free[np.argmin(keys)]))

    def to_ascii(self) -> str:
        chars = np.full(self.shape, "?", dtype="<U1")
        chars[self.probs == 0.0] = "."
        chars[self.probs == 1.0] = "#"
        return "\n".join("".join(row) for row in chars) + "\n"


def cell_index(coord: CellCoord, rows: int, cols: int | None = None) -> int:
    """Column-major 1-based linear index ``u = (j-1)*rows + i``."""
    i, j = coord
    if rows < 1 or i < 1 or i > rows or j < 1 or (cols is not None and j > cols):
        raise GridError(f"cell {tuple(coord)} outside grid with {rows} rows")
    return (j - 1) * rows + i


def cell_coords(u: int, rows: int, cols: int | None = None) -> CellCoord:
    if rows < 1 or u < 1 or (cols is not None and u > rows * cols):
        raise GridError(f"linear index {u} out of range")
    j, i = divmod(u - 1, rows)
    return CellCoord(i + 1, j + 1)


def manhattan(a: CellCoord, b: CellCoord) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


def neighbors(grid: OccupancyGrid, at: CellCoord, model: MotionModel = FOUR_CONNECTED) -> list[CellCoord]:
    out = []
    for d in model.directions:
        di, dj = DELTAS[d]
        nb = CellCoord(at[0] + di, at[1] + dj)
        if grid.is_free(nb):
            out.append(nb)
    return out


def reachable(grid: OccupancyGrid, start: CellCoord) -> set[CellCoord]:
    """Free cells 4-connected to ``start`` (including it)."""
    if not grid.is_free(start):
        return set()
    seen = {CellCoord(*start)}
    queue = deque(seen)
    while queue:
        c = queue.popleft()
        for nb in neighbors(grid, c):
            if nb not in seen:
                seen.add(nb)
                queue.append(nb)
    return seen


# -- parsing ----------------------------------------------------------------

_ASCII = {".": 0.0, "#": 1.0, "?": 0.5}


def parse_ascii_map(text: str, resolution: float = 0.05) -> OccupancyGrid:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    lines = [ln[:-1] if ln.endswith("\r") else ln for ln in lines]
    if not lines or not lines[0]:
        raise MapFormatError("empty map")
    width = len(lines[0])
    probs = np.empty((len(lines), width))
    for r, ln in enumerate(lines):
        if len(ln) != width:
            raise MapFormatError(f"row {r + 1} has {len(ln)} cells, expected {width}")
        for c, ch in enumerate(ln):
            try:
                probs[r, c] = _ASCII[ch]
            except KeyError:
                raise MapFormatError(f"unknown map character {ch!r} at row {r + 1}, col {c + 1}") from None
    return OccupancyGrid(probs, resolution)


_PGM_TOKEN = re.compile(rb"\s*(?:#[^\n]*\n\s*)*(\S+)")


def parse_pgm_map(
    data: bytes,
    occupied_threshold: float = 0.65,
    free_threshold: float = 0.196,
    resolution: float = 0.05,
) -> OccupancyGrid:
    """Read a P2/P5 greymap; dark pixels are obstacles (ROS map_server convention)."""
    if not 0.0 <= free_threshold < occupied_threshold <= 1.0:
        raise GridError("need 0 <= free_threshold < occupied_threshold <= 1")
    pos = 0
    header = []
    for _ in range(4):
        m = _PGM_TOKEN.match(data, pos)
        if m is None:
            raise MapFormatError("truncated PGM header")
        header.append(m.group(1))
        pos = m.end()
    magic, *nums = header
    if magic not in (b"P2", b"P5"):
        raise MapFormatError(f"unsupported PGM magic {magic!r}")
    try:
        width, height, maxval = (int(x) for x in nums)
    except ValueError:
        raise MapFormatError("non-numeric PGM header field") from None
    if width < 1 or height < 1 or not 0 < maxval <= 255:
        raise MapFormatError(f"bad PGM dimensions or maxval: {width}x{height}, {maxval}")
    n = width * height
    if magic == b"P5":
        payload = data[pos + 1 : pos + 1 + n]  # single whitespace after maxval
        if len(payload) != n:
            raise MapFormatError(f"truncated PGM payload: {len(payload)} of {n} bytes")
        pixels = np.frombuffer(payload, dtype=np.uint8).astype(np.float64)
    else:
        try:
            pixels = np.array(data[pos:].split(), dtype=np.float64)
        except ValueError:
            raise MapFormatError("non-numeric P2 pixel value") from None
        if pixels.size < n:
            raise MapFormatError(f"truncated PGM payload: {pixels.size} of {n} values")
        pixels = pixels[:n]
    if pixels.max() > maxval:
        raise MapFormatError("pixel value exceeds maxval")
    p = 1.0 - pixels.reshape(height, width) / 255.0
    probs = np.full(p.shape, 0.5)
    probs[p >= occupied_threshold] = 1.0
    probs[p <= free_threshold] = 0.0
    return OccupancyGrid(probs, resolution)


def load_map(path, resolution: float | None = None) -> OccupancyGrid:
    """Load an ASCII (.txt/.map) or PGM map by extension."""
    from pathlib import Path

    path = Path(path)
    data = path.read_bytes()
    kw = {} if resolution is None else {"resolution": resolution}
    if path.suffix.lower() == ".pgm" or data[:2] in (b"P2", b"P5"):
        return parse_pgm_map(data, **kw)
    return parse_ascii_map(data.decode("utf-8"), **kw)
