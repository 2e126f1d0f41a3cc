import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from antcover.colony import Tour
from antcover.gridmap import GridError
from antcover.pheromone import ParameterError, PheromoneField, global_deposit, local_update, tau


def test_fresh_field_is_uniform():
    f = PheromoneField(3, 4, tau0=0.7)
    assert tau(f, (2, 2), (2, 3)) == 0.7
    assert np.all(f.tau == 0.7)


def test_local_update_touches_one_edge():
    f = PheromoneField(3, 3, tau0=1.0, initial=2.0)
    e = ((2, 2), (1, 2))
    local_update(f, e, 0.5)
    assert tau(f, *e) == pytest.approx(1.5)
    assert tau(f, (1, 2), (2, 2)) == 2.0  # reverse direction is a separate edge
    assert np.count_nonzero(f.tau != 2.0) == 1


def test_non_adjacent_query():
    with pytest.raises(GridError):
        tau(PheromoneField(3, 3), (1, 1), (3, 3))


@pytest.mark.parametrize("t, t0, a, want", [(1.0, 1.0, 0.3, 1.0), (2.0, 1.0, 0.1, 1.9), (0.5, 1.0, 0.5, 0.75)])
def test_local_update_values(t, t0, a, want):
    f = PheromoneField(1, 2, tau0=t0, initial=t)
    assert local_update(f, ((1, 1), (1, 2)), a) == pytest.approx(want, abs=1e-15)


@pytest.mark.parametrize("a", [0.0, 1.0, -0.1, 1.5])
def test_alpha_bounds(a):
    with pytest.raises(ParameterError):
        local_update(PheromoneField(1, 2), ((1, 1), (1, 2)), a)


@settings(max_examples=80, deadline=None)
@given(
    st.floats(0.01, 0.99),
    st.integers(0, 300),
    st.floats(0.01, 10.0),
    st.floats(0.01, 10.0),
)
def test_local_update_closed_form(a, n, t_init, t0):
    f = PheromoneField(1, 2, tau0=t0, initial=t_init)
    e = ((1, 1), (1, 2))
    for _ in range(n):
        local_update(f, e, a)
    want = (1 - a) ** n * t_init + (1 - (1 - a) ** n) * t0
    assert tau(f, *e) == pytest.approx(want, rel=1e-9, abs=1e-12)


def test_global_deposit_example():
    # straight 11-cell tour: L = 10 steps, delta = 0.1
    f = PheromoneField(1, 11, tau0=1.0)
    t = Tour(np.arange(11), 1, 11)
    global_deposit(f, t, 0.1, quality=1.0)
    assert tau(f, (1, 1), (1, 2)) == pytest.approx(0.91)
    assert tau(f, (1, 2), (1, 1)) == 1.0


def test_global_deposit_repeated_edge_is_applied_per_traversal():
    f = PheromoneField(1, 2, tau0=1.0)
    t = Tour(np.array([0, 1, 0, 1]), 1, 2)
    global_deposit(f, t, 0.5, quality=3.0)  # delta = 1
    after_one = 0.5 * 1.0 + 0.5 * 1.0
    assert tau(f, (1, 1), (1, 2)) == pytest.approx(0.5 * after_one + 0.5)
    assert tau(f, (1, 2), (1, 1)) == pytest.approx(1.0)


def test_global_deposit_single_column_grid():
    f = PheromoneField(3, 1, tau0=1.0)
    global_deposit(f, Tour(np.array([0, 1, 2]), 3, 1), 0.5, quality=1.0)
    assert tau(f, (1, 1), (2, 1)) == pytest.approx(0.75)
    assert tau(f, (2, 1), (3, 1)) == pytest.approx(0.75)


def test_global_deposit_errors():
    f = PheromoneField(2, 2)
    with pytest.raises(GridError):
        global_deposit(f, Tour(np.array([], dtype=np.int32), 2, 2), 0.1)
    with pytest.raises(GridError):
        global_deposit(f, Tour(np.array([0, 3]), 2, 2), 0.1)
    before = f.tau.copy()
    global_deposit(f, Tour(np.array([0]), 2, 2), 0.1)
    assert np.array_equal(f.tau, before)


def test_csv_export_order():
    f = PheromoneField(2, 2)
    local_update(f, ((2, 1), (2, 2)), 0.5)
    lines = f.to_csv().splitlines()
    assert lines[0] == "cell,direction,intensity"
    assert len(lines) == 1 + 16
    # cell (2,1) has linear index 2
    assert lines[1 + 4 + 3].startswith("2,right,")


def test_cell_totals_shape():
    f = PheromoneField(3, 5, tau0=0.5)
    assert f.cell_totals().shape == (3, 5)
    assert np.all(f.cell_totals() == 2.0)
