import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from antcover.gridmap import (
    CellCoord,
    CellKind,
    CellState,
    Direction,
    GridError,
    MapFormatError,
    OccupancyGrid,
    cell_coords,
    cell_index,
    load_map,
    manhattan,
    neighbors,
    parse_ascii_map,
    parse_pgm_map,
    reachable,
)

from conftest import bfs_free, grid, open_grid


@pytest.mark.parametrize(
    "coord, rows, u",
    [((3, 5), 7, 31), ((1, 1), 7, 1), ((2, 4), 7, 23)],
)
def test_cell_index_examples(coord, rows, u):
    assert cell_index(CellCoord(*coord), rows) == u


@pytest.mark.parametrize("u, rows, coord", [(31, 7, (3, 5)), (1, 7, (1, 1)), (36, 7, (1, 6))])
def test_cell_coords_examples(u, rows, coord):
    assert cell_coords(u, rows) == coord


@pytest.mark.parametrize("coord", [(0, 1), (8, 1), (1, 0), (1, 9)])
def test_cell_index_out_of_range(coord):
    with pytest.raises(GridError):
        cell_index(coord, 7, 8)


def test_cell_coords_out_of_range():
    with pytest.raises(GridError):
        cell_coords(0, 7)
    with pytest.raises(GridError):
        cell_coords(57, 7, 8)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 100), st.integers(1, 100), st.data())
def test_index_roundtrip(rows, cols, data):
    i = data.draw(st.integers(1, rows))
    j = data.draw(st.integers(1, cols))
    u = cell_index((i, j), rows, cols)
    assert 1 <= u <= rows * cols
    assert cell_coords(u, rows, cols) == (i, j)


@pytest.mark.parametrize("rows, cols", [(1, 1), (7, 8), (13, 5), (100, 100)])
def test_index_is_a_bijection(rows, cols):
    us = {cell_index((i, j), rows, cols) for i in range(1, rows + 1) for j in range(1, cols + 1)}
    assert us == set(range(1, rows * cols + 1))


@pytest.mark.parametrize(
    "p, kind, ok",
    [
        (0.0, CellKind.FREE, True),
        (1.0, CellKind.OCCUPIED, False),
        (0.5, CellKind.UNKNOWN, False),
        (0.2, CellKind.PROBABILISTIC, True),
        (0.8, CellKind.PROBABILISTIC, False),
    ],
)
def test_cell_state(p, kind, ok):
    s = CellState.from_probability(p)
    assert s.kind is kind
    assert s.traversable is ok


def test_cell_state_rejects_out_of_range():
    with pytest.raises(GridError):
        CellState.from_probability(1.5)


def test_parse_ascii_examples():
    g = parse_ascii_map("..\n.#")
    assert g.shape == (2, 2)
    assert g.probs.ravel().tolist() == [0, 0, 0, 1]
    u = parse_ascii_map("?")
    assert u.shape == (1, 1) and u.probs[0, 0] == 0.5
    assert not u.is_free((1, 1))


@pytest.mark.parametrize("text", ["..\n...", "", "\n", ".x"])
def test_parse_ascii_errors(text):
    with pytest.raises(MapFormatError):
        parse_ascii_map(text)


def test_ascii_roundtrip():
    g = grid(
        """
        ..#.
        .?..
        #...
        """
    )
    assert parse_ascii_map(g.to_ascii()) == g


def _pgm(values, w, h, binary=True):
    if binary:
        return b"P5\n# made up\n%d %d\n255\n" % (w, h) + bytes(values)
    return (b"P2\n%d %d\n255\n" % (w, h)) + " ".join(map(str, values)).encode()


@pytest.mark.parametrize("binary", [True, False])
def test_parse_pgm(binary):
    assert np.all(parse_pgm_map(_pgm([255] * 6, 3, 2, binary)).probs == 0.0)
    assert np.all(parse_pgm_map(_pgm([0] * 6, 3, 2, binary)).probs == 1.0)
    g = parse_pgm_map(_pgm([128], 1, 1, binary))
    assert g.probs[0, 0] == 0.5
    assert g.state((1, 1)).kind is CellKind.UNKNOWN


def test_parse_pgm_layout():
    g = parse_pgm_map(_pgm([255, 0, 255, 255, 255, 0], 3, 2))
    assert g.to_ascii() == ".#.\n..#\n"


@pytest.mark.parametrize(
    "data",
    [b"P6\n1 1\n255\n\x00", b"P5\n2 2\n255\n\x00\x00", b"P5\n2", b"P2\n2 1\n255\n0"],
)
def test_parse_pgm_errors(data):
    with pytest.raises(MapFormatError):
        parse_pgm_map(data)


def test_load_map_by_extension(tmp_path):
    (tmp_path / "a.txt").write_text("..\n#.\n")
    (tmp_path / "b.pgm").write_bytes(_pgm([255, 255, 0, 255], 2, 2))
    assert load_map(tmp_path / "a.txt") == load_map(tmp_path / "b.pgm")


def test_neighbors():
    g = open_grid(3, 3)
    assert len(neighbors(g, (2, 2))) == 4
    assert neighbors(g, (1, 1)) == [(2, 1), (1, 2)]
    ringed = grid(
        """
        ###
        #.#
        ###
        """
    )
    assert neighbors(ringed, (2, 2)) == []


@pytest.mark.parametrize("a, b, d", [((1, 1), (1, 1), 0), ((2, 3), (2, 4), 1), ((1, 1), (4, 6), 8)])
def test_manhattan(a, b, d):
    assert manhattan(a, b) == d


def test_direction_order():
    assert [d.name for d in Direction] == ["UP", "DOWN", "LEFT", "RIGHT"]


def test_grid_is_read_only():
    g = open_grid(2, 2)
    with pytest.raises(ValueError):
        g.probs[0, 0] = 1.0


def test_grid_rejects_bad_probs():
    with pytest.raises(GridError):
        OccupancyGrid(np.array([[0.0, 2.0]]))
    with pytest.raises(GridError):
        OccupancyGrid(np.zeros((0, 3)))


def test_default_start_is_smallest_linear_index():
    g = grid(
        """
        #.
        .#
        """
    )
    assert g.default_start() == (2, 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 9), st.integers(1, 9), st.integers(0, 2**31))
def test_reachable_matches_oracle(rows, cols, seed):
    r = np.random.default_rng(seed)
    g = OccupancyGrid((r.random((rows, cols)) < 0.3).astype(float))
    for c in g.free_cells()[:3]:
        assert {tuple(x) for x in reachable(g, c)} == bfs_free(g, c)
