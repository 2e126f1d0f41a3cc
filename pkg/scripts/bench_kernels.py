"""Time the compiled and pure-Python tour kernels on the same seeded runs.

    python3 scripts/bench_kernels.py [--ants 200] [--maps office simulated]

Both kernels draw from the generator identically, so the best tours must match;
the script checks that before reporting the speed-up.
"""
import argparse
import time

from antcover import _kernel, _pykernel
from antcover.colony import SolverParams
from antcover.fasaco import VelocitySchedule, run_fasaco
from antcover.harness import SHIPPED_MAPS, resolve_map


def timed(kernel, grid, params, schedule):
    _kernel.construct_tour = kernel
    t0 = time.process_time()
    tour = run_fasaco(grid, params, schedule)
    return tour, time.process_time() - t0


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ants", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--schedule", default="decreasing:8..1")
    ap.add_argument("--maps", nargs="+", default=list(SHIPPED_MAPS))
    args = ap.parse_args(argv)
    try:
        from antcover._ckernel import construct_tour as compiled
    except ImportError:
        raise SystemExit("compiled kernel not built; run: python3 setup.py build_ext --inplace")

    params = SolverParams(ants=args.ants, seed=args.seed)
    schedule = VelocitySchedule.parse(args.schedule)
    print(f"{'map':<12} {'cells':>6} {'python s':>9} {'cython s':>9} {'speed-up':>9}  same")
    for src in args.maps:
        grid = resolve_map(src)
        tp, sp = timed(_pykernel.construct_tour, grid, params, schedule)
        tc, sc = timed(compiled, grid, params, schedule)
        print(f"{src:<12} {len(grid.free_cells()):>6} {sp:>9.3f} {sc:>9.3f} {sp / sc:>8.1f}x  {tp == tc}")


if __name__ == "__main__":
    main()
