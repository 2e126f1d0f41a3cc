import json

import numpy as np
import pytest

from antcover.colony import SolverParams
from antcover.fasaco import VelocitySchedule
from antcover.harness import (
    TABLE1_SCHEDULES,
    ExperimentConfig,
    GenerationError,
    derive_seed,
    generate_random_map,
    map_id,
    resolve_map,
    run_experiment_suite,
    shipped_map,
)

from conftest import bfs_free


def test_density_zero_is_open():
    g = generate_random_map(6, 9, 0.0, 1)
    assert np.all(g.probs == 0.0)


def test_generator_is_deterministic():
    assert generate_random_map(15, 12, 0.25, 42) == generate_random_map(15, 12, 0.25, 42)
    assert generate_random_map(15, 12, 0.25, 42) != generate_random_map(15, 12, 0.25, 43)


@pytest.mark.parametrize("seed", range(30))
def test_generated_maps_are_connected(seed):
    g = generate_random_map(20, 20, 0.2, seed)
    free = g.free_cells()
    assert bfs_free(g, free[0]) == {tuple(c) for c in free}


def test_generator_errors():
    with pytest.raises(ValueError):
        generate_random_map(4, 4, 1.0, 0)
    with pytest.raises(GenerationError):
        generate_random_map(1, 1, 0.9, 0)


def test_shipped_maps_are_connected():
    for name in ("office", "simulated", "basement"):
        g = shipped_map(name)
        assert len(bfs_free(g, g.default_start())) == len(g.free_cells())


def test_resolve_map(tmp_path):
    p = tmp_path / "room.txt"
    p.write_text("...\n.#.\n")
    assert resolve_map(str(p)).shape == (2, 3)
    assert map_id(str(p)) == "room"
    assert resolve_map("gen:5x7:0.1:3") == generate_random_map(5, 7, 0.1, 3)
    assert map_id("office") == "office"


def test_derive_seed_is_stable():
    a = derive_seed(7, "office", "fasaco", "constant:1", 0)
    assert a == derive_seed(7, "office", "fasaco", "constant:1", 0)
    assert a != derive_seed(7, "office", "fasaco", "constant:1", 1)
    assert a != derive_seed(8, "office", "fasaco", "constant:1", 0)
    assert 0 <= a < 2**64


def _small_config(**kw):
    base = dict(
        maps=["gen:8x8:0.1:1", "gen:9x7:0.2:2", "gen:6x10:0.15:3"],
        schedules=list(TABLE1_SCHEDULES),
        params=SolverParams(ants=10),
        seed=7,
    )
    base.update(kw)
    return ExperimentConfig(**base)


def test_row_accounting():
    table = run_experiment_suite(_small_config())
    rows = table.rows()
    solver = [r for r in rows if r["algorithm"] == "fasaco"]
    base = [r for r in rows if r["algorithm"] != "fasaco"]
    assert len(solver) == 30 and len(base) == 9
    assert table.all_covered


def test_repeats_aggregate():
    table = run_experiment_suite(_small_config(maps=["gen:8x8:0.1:1"], repeats=5, schedules=[VelocitySchedule.decreasing(8, 1)]))
    rows = {r["algorithm"]: r for r in table.rows()}
    assert rows["fasaco"]["repeats"] == 5 and rows["aco"]["repeats"] == 5
    assert rows["zigzag"]["repeats"] == 1
    runs = [r for r in table.runs if r.algorithm == "fasaco"]
    assert len({r.seed for r in runs}) == 5
    assert rows["fasaco"]["n_r"] == float(np.median([r.report.n_r for r in runs]))


def test_outputs_are_reproducible():
    a = run_experiment_suite(_small_config(maps=["gen:8x8:0.1:1"]))
    b = run_experiment_suite(_small_config(maps=["gen:8x8:0.1:1"]))
    assert a.to_csv(timing=False) == b.to_csv(timing=False)
    assert a.to_json(timing=False) == b.to_json(timing=False)
    assert a.runs_csv(timing=False) == b.runs_csv(timing=False)
    data = json.loads(a.to_json(timing=False))
    assert "gen:8x8:0.1:1" in data["maps"]


def test_seed_does_not_depend_on_other_rows():
    one = run_experiment_suite(_small_config(maps=["gen:8x8:0.1:1"], schedules=[VelocitySchedule.constant(3)]))
    all_ = run_experiment_suite(_small_config(maps=["gen:8x8:0.1:1", "gen:9x7:0.2:2"]))
    pick = lambda t: [(r.seed, r.report.n_r) for r in t.runs if r.schedule == "constant:3" and r.map == "gen:8x8:0.1:1"]
    assert pick(one) == pick(all_)


def test_parallel_matches_serial():
    cfg = _small_config(maps=["gen:8x8:0.1:1"], schedules=[VelocitySchedule.constant(2)])
    serial = run_experiment_suite(cfg)
    cfg.jobs = 2
    assert run_experiment_suite(cfg).to_csv(timing=False) == serial.to_csv(timing=False)


def test_config_from_dict():
    cfg = ExperimentConfig.from_dict(
        {"maps": ["office"], "schedules": ["constant:2"], "params": {"ants": 5}, "baselines": ["zigzag"], "repeats": 2}
    )
    assert cfg.params.ants == 5 and cfg.schedules[0].velocities == (2,)
    assert cfg.baselines == ("zigzag",)
    with pytest.raises(ValueError):
        ExperimentConfig.from_dict({"maps": ["office"], "baselines": ["dijkstra"]})
