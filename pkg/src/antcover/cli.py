"""Command-line interface: ``antcover {plan,bench,generate,render}``."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from . import _kernel
from .baselines import spiral_stc, zigzag
from .colony import SolverParams, Tour, run_aco
from .fasaco import VelocitySchedule, run_fasaco
from .gridmap import CellCoord, MapFormatError, GridError
from .harness import (
    SHIPPED_MAPS,
    TABLE1_SCHEDULES,
    ExperimentConfig,
    generate_random_map,
    resolve_map,
    run_experiment_suite,
)
from .metrics import measure_cpu_time, report
from .pheromone import ParameterError, PheromoneField
from .render import render_pheromone_heatmap, render_svg

ALGORITHMS = ("fasaco", "aco", "spiral-stc", "zigzag")


def _start(text: str) -> CellCoord:
    try:
        i, j = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"start must look like 'i,j', got {text!r}") from None
    return CellCoord(i, j)


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ants", type=int, help="colony size K (default 1000)")
    p.add_argument("--seed", type=int, help="base RNG seed (default 0)")
    p.add_argument("--beta", type=float)
    p.add_argument("--q0", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--tau0", type=float)
    p.add_argument("--iterations", type=int, help="waves of the whole colony (default 1)")
    p.add_argument("--pass-visited", action="store_true", help="let fast runs pass through visited cells")


def _params(args, base: SolverParams | None = None) -> SolverParams:
    base = base or SolverParams()
    over = {k: getattr(args, k) for k in ("ants", "seed", "beta", "q0", "alpha", "tau0", "iterations")}
    if args.pass_visited:
        over["stop_at_visited"] = False
    return replace(base, **{k: v for k, v in over.items() if v is not None})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="antcover", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="run one planner on one map")
    p.add_argument("--map", required=True, help=f"map file, gen:RxC:density:seed, or one of {', '.join(SHIPPED_MAPS)}")
    p.add_argument("--algo", choices=ALGORITHMS, default="fasaco")
    p.add_argument("--schedule", default="decreasing:8..1", help="velocity schedule for fasaco")
    p.add_argument("--start", type=_start, help="start cell 'i,j' (1-based)")
    _add_solver_flags(p)
    p.add_argument("--out-json", type=Path)
    p.add_argument("--out-svg", type=Path)
    p.add_argument("--out-heatmap", type=Path, help="pheromone heat map SVG (ant algorithms only)")
    p.add_argument("--out-pheromone-csv", type=Path)

    b = sub.add_parser("bench", help="run the experiment grid")
    b.add_argument("--config", type=Path, help="JSON config; flags override its keys")
    b.add_argument("--table1", action="store_true", help="10 velocity schedules + baselines on the shipped maps")
    b.add_argument("--maps", nargs="+")
    b.add_argument("--schedules", nargs="+")
    b.add_argument("--repeats", type=int)
    b.add_argument("--no-baselines", action="store_true")
    _add_solver_flags(b)
    b.add_argument("--jobs", type=int, help="worker processes for independent rows")
    b.add_argument("--out", type=Path, help="aggregated CSV")
    b.add_argument("--out-json", type=Path)
    b.add_argument("--runs-out", type=Path, help="per-run CSV")
    b.add_argument("--svg-dir", type=Path, help="write one SVG per (map, algorithm, schedule)")
    b.add_argument("--no-timing", action="store_true", help="blank the CPU time columns so outputs are byte-stable")

    g = sub.add_parser("generate", help="generate a connected random map")
    g.add_argument("--rows", type=int, required=True)
    g.add_argument("--cols", type=int, required=True)
    g.add_argument("--density", type=float, default=0.15)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", type=Path)

    r = sub.add_parser("render", help="render a map, optionally with a tour from a plan JSON")
    r.add_argument("--map", required=True)
    r.add_argument("--tour", type=Path, help="JSON written by 'plan --out-json'")
    r.add_argument("--out", type=Path, required=True)
    return parser


def _plan(args) -> int:
    grid = resolve_map(args.map)
    params = _params(args)
    fld = None
    if args.algo == "fasaco":
        fld = PheromoneField.for_grid(grid, params.tau0)
        sched = VelocitySchedule.parse(args.schedule)
        tour, t = measure_cpu_time(run_fasaco, grid, params, sched, None, args.start, fld)
    elif args.algo == "aco":
        fld = PheromoneField.for_grid(grid, params.tau0)
        tour, t = measure_cpu_time(run_aco, grid, params, None, args.start, fld)
    elif args.algo == "spiral-stc":
        tour, t = measure_cpu_time(spiral_stc, grid, args.start)
    else:
        tour, t = measure_cpu_time(zigzag, grid, args.start)
    rep = report(tour, grid, t)
    print(f"algorithm={args.algo} n_r={rep.n_r} steps={rep.steps} t_o={rep.t_o:.4f}s "
          f"free_cells={rep.free_cells} covered={rep.covered} backend={_kernel.BACKEND}")
    if args.out_json:
        payload = {
            "map": args.map,
            "algorithm": args.algo,
            "schedule": args.schedule if args.algo == "fasaco" else None,
            "params": params.__dict__ if fld is not None else None,
            "report": rep.to_dict(),
            "tour": [list(c) for c in tour.cells],
        }
        args.out_json.write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")
    if args.out_svg:
        args.out_svg.write_text(render_svg(grid, tour), encoding="utf-8")
    if fld is not None and args.out_heatmap:
        args.out_heatmap.write_text(render_pheromone_heatmap(fld, grid), encoding="utf-8")
    if fld is not None and args.out_pheromone_csv:
        args.out_pheromone_csv.write_text(fld.to_csv(), encoding="utf-8")
    return 0 if rep.covered else 1


def _bench_config(args) -> ExperimentConfig:
    raw = {}
    if args.config:
        raw = json.loads(args.config.read_text(encoding="utf-8"))
    if args.table1:
        raw.setdefault("maps", list(SHIPPED_MAPS))
        raw.setdefault("schedules", [s.label for s in TABLE1_SCHEDULES])
    if args.maps:
        raw["maps"] = args.maps
    if args.schedules:
        raw["schedules"] = args.schedules
    if args.repeats is not None:
        raw["repeats"] = args.repeats
    if args.jobs is not None:
        raw["jobs"] = args.jobs
    if args.no_baselines:
        raw["baselines"] = []
    params = SolverParams(**raw.pop("params", {}))
    if args.seed is not None:
        raw["seed"] = args.seed
    raw["params"] = _params(args, params).__dict__
    if "maps" not in raw:
        raise ValueError("no maps given (use --maps, --table1 or a config file)")
    return ExperimentConfig.from_dict(raw)


def _bench(args) -> int:
    config = _bench_config(args)
    table = run_experiment_suite(config)
    timing = not args.no_timing
    print(table.format_table())
    if args.out:
        args.out.write_text(table.to_csv(timing), encoding="utf-8")
    if args.out_json:
        args.out_json.write_text(table.to_json(timing), encoding="utf-8")
    if args.runs_out:
        args.runs_out.write_text(table.runs_csv(timing), encoding="utf-8")
    if args.svg_dir:
        args.svg_dir.mkdir(parents=True, exist_ok=True)
        grids = {}
        for run in table.runs:
            if run.repeat != 0 or run.tour is None:
                continue
            grid = grids.setdefault(run.map, resolve_map(run.source))
            name = f"{run.map}__{run.algorithm}__{run.schedule}".replace(":", "_").replace("/", "_")
            (args.svg_dir / f"{name}.svg").write_text(render_svg(grid, run.tour), encoding="utf-8")
    failed = [r for r in table.runs if not r.report.covered]
    for r in failed:
        print(f"incomplete coverage: {r.map} {r.algorithm} {r.schedule} repeat {r.repeat}", file=sys.stderr)
    return 0 if not failed else 1


def _generate(args) -> int:
    text = generate_random_map(args.rows, args.cols, args.density, args.seed).to_ascii()
    if args.out:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _render(args) -> int:
    grid = resolve_map(args.map)
    tour = None
    if args.tour:
        cells = json.loads(args.tour.read_text(encoding="utf-8"))["tour"]
        tour = Tour.from_cells([CellCoord(*c) for c in cells], grid.rows, grid.cols)
    args.out.write_text(render_svg(grid, tour), encoding="utf-8")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"plan": _plan, "bench": _bench, "generate": _generate, "render": _render}[args.command]
    try:
        return handler(args)
    except (OSError, MapFormatError, GridError, ParameterError, ValueError, KeyError) as exc:
        print(f"antcover: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
