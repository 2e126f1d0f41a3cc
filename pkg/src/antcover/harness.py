"""Benchmark harness: map corpora, seeded experiment grid and result tables."""
from __future__ import annotations

import csv
import hashlib
import io
import json
import re
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

import numpy as np

from . import _kernel
from .baselines import spiral_stc, zigzag
from .colony import SolverParams, Tour, run_aco
from .fasaco import VelocitySchedule, run_fasaco
from .gridmap import OccupancyGrid, load_map, parse_ascii_map
from .metrics import CoverageReport, measure_cpu_time, report


class GenerationError(RuntimeError):
    pass


SHIPPED_MAPS = ("office", "simulated", "basement")

TABLE1_SCHEDULES = tuple(VelocitySchedule.constant(v) for v in range(1, 9)) + (
    VelocitySchedule.increasing(1, 8),
    VelocitySchedule.decreasing(8, 1),
)

BASELINES = ("aco", "spiral-stc", "zigzag")


# -- maps ----------------------------------------------------------------------


def generate_random_map(rows: int, cols: int, obstacle_density: float, seed: int, max_tries: int = 20) -> OccupancyGrid:
    """Uniformly scattered obstacles, then carved so the free cells form one 4-connected region."""
    if not 0.0 <= obstacle_density < 1.0:
        raise ValueError("obstacle_density must lie in [0, 1)")
    n = rows * cols
    n_obs = int(round(obstacle_density * n))
    for attempt in range(max_tries):
        rng = np.random.default_rng([seed, attempt])
        occ = np.zeros(n, dtype=bool)
        occ[rng.choice(n, size=n_obs, replace=False)] = True
        if occ.all():
            continue
        occ = _carve_connected(occ.reshape(rows, cols))
        return OccupancyGrid(occ.astype(np.float64))
    raise GenerationError(f"no free cell after {max_tries} tries at density {obstacle_density}")


def _label(free: np.ndarray) -> np.ndarray:
    rows, cols = free.shape
    lab = np.full(free.shape, -1, dtype=np.int64)
    nxt = 0
    for r0, c0 in zip(*np.nonzero(free)):
        if lab[r0, c0] >= 0:
            continue
        lab[r0, c0] = nxt
        q = deque([(r0, c0)])
        while q:
            r, c = q.popleft()
            for dr, dc in ((-1, 0), (1, 0), (0, -1), (0, 1)):
                rr, cc = r + dr, c + dc
                if 0 <= rr < rows and 0 <= cc < cols and free[rr, cc] and lab[rr, cc] < 0:
                    lab[rr, cc] = nxt
                    q.append((rr, cc))
        nxt += 1
    return lab


def _carve_connected(occ: np.ndarray) -> np.ndarray:
    """Join the component holding the first free cell to the others by clearing obstacle paths."""
    occ = occ.copy()
    rows, cols = occ.shape
    while True:
        lab = _label(~occ)
        if lab.max() <= 0:
            return occ
        # BFS from component 0 over all cells to the nearest cell of another component
        parent = {}
        q = deque()
        for r, c in zip(*np.nonzero(lab == 0)):
            parent[(r, c)] = None
            q.append((r, c))
        hit = None
        while q and hit is None:
            r, c = q.popleft()
            for dr, dc in ((-1, 0), (1, 0), (0, -1), (0, 1)):
                rr, cc = r + dr, c + dc
                if 0 <= rr < rows and 0 <= cc < cols and (rr, cc) not in parent:
                    parent[(rr, cc)] = (r, c)
                    if lab[rr, cc] > 0:
                        hit = (rr, cc)
                        break
                    q.append((rr, cc))
        node = parent[hit]
        while node is not None and lab[node] != 0:
            occ[node] = False
            node = parent[node]


def shipped_map(name: str) -> OccupancyGrid:
    text = resources.files("antcover").joinpath("maps", f"{name}.txt").read_text(encoding="utf-8")
    res = {"basement": 0.25}.get(name, 0.05)
    return parse_ascii_map(text, resolution=res)


_GEN = re.compile(r"gen:(\d+)x(\d+):([0-9.]+):(\d+)")


def resolve_map(source: str) -> OccupancyGrid:
    """``gen:RxC:density:seed``, a shipped map name, or a file path."""
    m = _GEN.fullmatch(source)
    if m:
        r, c, d, s = m.groups()
        return generate_random_map(int(r), int(c), float(d), int(s))
    if source in SHIPPED_MAPS:
        return shipped_map(source)
    return load_map(source)


def map_id(source: str) -> str:
    if _GEN.fullmatch(source) or source in SHIPPED_MAPS:
        return source
    return Path(source).stem


# -- seeds ---------------------------------------------------------------------


def derive_seed(base: int, *parts) -> int:
    """Stable 64-bit seed from the base seed and row identifiers."""
    h = hashlib.blake2b(digest_size=8)
    h.update(str(int(base)).encode())
    for p in parts:
        h.update(b"\x1f" + str(p).encode())
    return int.from_bytes(h.digest(), "little")


# -- experiments ---------------------------------------------------------------


@dataclass
class ExperimentConfig:
    maps: list[str]
    schedules: list[VelocitySchedule] = field(default_factory=lambda: list(TABLE1_SCHEDULES))
    params: SolverParams = field(default_factory=SolverParams)
    repeats: int = 1
    seed: int = 0
    baselines: tuple[str, ...] = BASELINES
    jobs: int = 1

    def __post_init__(self):
        if self.repeats < 1:
            raise ValueError("repeats must be >= 1")
        if not self.maps or not (self.schedules or self.baselines):
            raise ValueError("need at least one map and one schedule")
        unknown = set(self.baselines) - set(BASELINES)
        if unknown:
            raise ValueError(f"unknown baselines: {sorted(unknown)}")

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        d = dict(d)
        params = SolverParams(**d.pop("params", {}))
        scheds = [VelocitySchedule.parse(s) for s in d.pop("schedules", [s.label for s in TABLE1_SCHEDULES])]
        if "baselines" in d:
            d["baselines"] = tuple(d["baselines"])
        return cls(schedules=scheds, params=params, **d)


@dataclass(frozen=True)
class RunResult:
    map: str
    algorithm: str
    schedule: str
    repeat: int
    seed: int
    report: CoverageReport
    source: str = ""
    tour: Tour | None = field(default=None, compare=False, repr=False)


def _run_one(task) -> RunResult:
    src, mid, grid, algorithm, schedule, repeat, seed, params = task
    if algorithm == "fasaco":
        sched = VelocitySchedule.parse(schedule)
        p = replace(params, seed=seed)
        tour, t = measure_cpu_time(run_fasaco, grid, p, sched)
    elif algorithm == "aco":
        p = replace(params, seed=seed)
        tour, t = measure_cpu_time(run_aco, grid, p)
    elif algorithm == "spiral-stc":
        tour, t = measure_cpu_time(spiral_stc, grid)
    elif algorithm == "zigzag":
        tour, t = measure_cpu_time(zigzag, grid)
    else:
        raise ValueError(algorithm)
    return RunResult(mid, algorithm, schedule, repeat, seed, report(tour, grid, t), src, tour)


def _tasks(config: ExperimentConfig):
    for src in config.maps:
        mid = map_id(src)
        grid = resolve_map(src)
        rows = [("fasaco", s.label) for s in config.schedules]
        rows += [(b, "constant:1" if b == "aco" else "-") for b in config.baselines]
        for algorithm, label in rows:
            deterministic = algorithm in ("spiral-stc", "zigzag")
            for rep in range(1 if deterministic else config.repeats):
                seed = 0 if deterministic else derive_seed(config.seed, mid, algorithm, label, rep)
                yield (src, mid, grid, algorithm, label, rep, seed, config.params)


def run_experiment_suite(config: ExperimentConfig) -> "ResultTable":
    tasks = list(_tasks(config))
    if config.jobs > 1:
        with ProcessPoolExecutor(config.jobs) as ex:
            runs = list(ex.map(_run_one, tasks))
    else:
        runs = [_run_one(t) for t in tasks]
    return ResultTable(runs)


def _iqr(x) -> float:
    q1, q3 = np.percentile(x, [25, 75])
    return float(q3 - q1)


@dataclass
class ResultTable:
    runs: list[RunResult]

    def keys(self) -> list[tuple[str, str, str]]:
        seen = {}
        for r in self.runs:
            seen.setdefault((r.map, r.algorithm, r.schedule), None)
        return list(seen)

    def rows(self) -> list[dict]:
        """One aggregated row per (map, algorithm, schedule): medians and IQRs over repeats."""
        groups: dict[tuple, list[RunResult]] = {}
        for r in self.runs:
            groups.setdefault((r.map, r.algorithm, r.schedule), []).append(r)
        out = []
        for (m, a, s), rs in groups.items():
            rs = sorted(rs, key=lambda r: r.repeat)
            n_r = [r.report.n_r for r in rs]
            t_o = [r.report.t_o for r in rs]
            steps = [r.report.steps for r in rs]
            out.append(
                {
                    "map": m,
                    "algorithm": a,
                    "schedule": s,
                    "seed": rs[0].seed,
                    "n_r": float(np.median(n_r)),
                    "t_o_seconds": float(np.median(t_o)),
                    "steps": float(np.median(steps)),
                    "covered": all(r.report.covered for r in rs),
                    "repeats": len(rs),
                    "n_r_iqr": _iqr(n_r),
                    "t_o_iqr": _iqr(t_o),
                    "free_cells": rs[0].report.free_cells,
                }
            )
        return out

    @property
    def all_covered(self) -> bool:
        return all(r.report.covered for r in self.runs)

    def to_csv(self, timing: bool = True) -> str:
        cols = ["map", "algorithm", "schedule", "seed", "n_r", "t_o_seconds", "steps", "covered",
                "repeats", "n_r_iqr", "t_o_iqr"]
        buf = io.StringIO()
        w = csv.DictWriter(buf, cols, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for row in self.rows():
            row = dict(row)
            if not timing:
                row["t_o_seconds"] = row["t_o_iqr"] = ""
            else:
                row["t_o_seconds"] = f"{row['t_o_seconds']:.6f}"
                row["t_o_iqr"] = f"{row['t_o_iqr']:.6f}"
            w.writerow(row)
        return buf.getvalue()

    def runs_csv(self, timing: bool = True) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["map", "algorithm", "schedule", "repeat", "seed", "n_r", "t_o_seconds", "steps", "covered"])
        for r in self.runs:
            t = f"{r.report.t_o:.6f}" if timing else ""
            w.writerow([r.map, r.algorithm, r.schedule, r.repeat, r.seed, r.report.n_r, t, r.report.steps, r.report.covered])
        return buf.getvalue()

    def to_json(self, timing: bool = True) -> str:
        nested: dict[str, list] = {}
        for row in self.rows():
            row = dict(row)
            if not timing:
                row.pop("t_o_seconds")
                row.pop("t_o_iqr")
            nested.setdefault(row.pop("map"), []).append(row)
        return json.dumps({"backend": _kernel.BACKEND, "maps": nested}, indent=2, sort_keys=True) + "\n"

    def format_table(self) -> str:
        """Fixed-width text table, one line per aggregated row."""
        lines = [f"{'map':<24} {'algorithm':<11} {'schedule':<16} {'n_r':>8} {'t_o (s)':>10} {'ok':>3}"]
        for r in self.rows():
            lines.append(
                f"{r['map']:<24} {r['algorithm']:<11} {r['schedule']:<16} {r['n_r']:>8g} "
                f"{r['t_o_seconds']:>10.4f} {'y' if r['covered'] else 'n':>3}"
            )
        return "\n".join(lines)
