"""Coverage path planning on occupancy grids with velocity-cohort ant colonies."""
from ._kernel import BACKEND
from .baselines import spiral_stc, zigzag
from .colony import DeadEnd, SolverParams, Tour, construct_tour, run_aco, select_next, transition_probabilities
from .fasaco import VelocitySchedule, fast_move, run_fasaco, split_cohorts
from .gridmap import CellCoord, Direction, GridError, MapFormatError, OccupancyGrid, load_map, parse_ascii_map
from .harness import ExperimentConfig, generate_random_map, run_experiment_suite
from .metrics import CoverageReport, coverage_complete, recovered_cells, report
from .pheromone import ParameterError, PheromoneField

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CellCoord",
    "CoverageReport",
    "DeadEnd",
    "Direction",
    "ExperimentConfig",
    "GridError",
    "MapFormatError",
    "OccupancyGrid",
    "ParameterError",
    "PheromoneField",
    "SolverParams",
    "Tour",
    "VelocitySchedule",
    "construct_tour",
    "coverage_complete",
    "fast_move",
    "generate_random_map",
    "load_map",
    "parse_ascii_map",
    "recovered_cells",
    "report",
    "run_aco",
    "run_experiment_suite",
    "run_fasaco",
    "select_next",
    "spiral_stc",
    "split_cohorts",
    "transition_probabilities",
    "zigzag",
]
