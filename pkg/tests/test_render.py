import numpy as np
import pytest

from antcover.colony import SolverParams, Tour, construct_tour
from antcover.gridmap import GridError, OccupancyGrid
from antcover.pheromone import PheromoneField, local_update
from antcover.render import render_pheromone_heatmap, render_svg

from conftest import grid, open_grid


def test_singleton_tour_has_no_segments():
    svg = render_svg(open_grid(1, 1), Tour(np.array([0]), 1, 1))
    assert 'class="path"' not in svg and 'class="arrow"' not in svg
    assert 'class="start"' in svg


def test_two_by_two_segments_and_arrows():
    svg = render_svg(open_grid(2, 2), Tour.from_cells([(1, 1), (1, 2), (2, 2), (2, 1)], 2, 2))
    line = next(ln for ln in svg.splitlines() if 'class="path"' in ln)
    pts = line.split('points="')[1].split('"')[0].split()
    assert len(pts) - 1 == 3
    assert svg.count('class="arrow"') == 3


def test_map_only_and_obstacles():
    g = grid(
        """
        .#
        ?.
        """
    )
    svg = render_svg(g, None)
    assert svg.count('class="occupied"') == 1 and svg.count('class="unknown"') == 1
    assert 'class="path"' not in svg


def test_svg_is_byte_identical():
    g = grid(
        """
        ....
        .#..
        ....
        """
    )
    t = construct_tour(g, PheromoneField.for_grid(g), SolverParams(), np.random.default_rng(0))
    assert render_svg(g, t) == render_svg(g, Tour(t.offsets.copy(), 3, 4))


def test_shape_mismatch():
    with pytest.raises(GridError):
        render_svg(open_grid(2, 2), Tour(np.array([0]), 3, 3))
    with pytest.raises(GridError):
        render_pheromone_heatmap(PheromoneField(3, 3), open_grid(2, 2))


def _levels(svg):
    return [float(ln.split('data-level="')[1].split('"')[0]) for ln in svg.splitlines() if 'class="heat"' in ln]


def test_uniform_heatmap():
    levels = _levels(render_pheromone_heatmap(PheromoneField(3, 3), open_grid(3, 3)))
    assert len(levels) == 9 and len(set(levels)) == 1


def test_traversed_cells_are_brighter():
    g = open_grid(3, 6)
    f = PheromoneField.for_grid(g, tau0=1.0, initial=0.1)
    t = Tour.from_cells([(1, c) for c in range(1, 6)], 3, 6)
    for a, b in zip(t.cells, t.cells[1:]):
        local_update(f, (a, b), 0.3)
    levels = np.array(_levels(render_pheromone_heatmap(f, g))).reshape(3, 6)
    assert levels[0, :4].min() > levels[1:, :].max()


def test_all_occupied_heatmap():
    g = OccupancyGrid(np.ones((2, 2)))
    assert 'class="heat"' not in render_pheromone_heatmap(PheromoneField(2, 2), g)
