from collections import deque

import numpy as np
import pytest

from antcover.gridmap import OccupancyGrid, parse_ascii_map


def grid(text: str) -> OccupancyGrid:
    return parse_ascii_map("\n".join(line.strip() for line in text.strip().splitlines()))


def open_grid(rows: int, cols: int) -> OccupancyGrid:
    return OccupancyGrid(np.zeros((rows, cols)))


def bfs_free(g: OccupancyGrid, start) -> set:
    """Independent flood fill over the probability array (oracle for reachability)."""
    free = g.probs < 0.5
    r0, c0 = start[0] - 1, start[1] - 1
    if not free[r0, c0]:
        return set()
    seen = {(r0, c0)}
    q = deque(seen)
    while q:
        r, c = q.popleft()
        for rr, cc in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
            if 0 <= rr < g.rows and 0 <= cc < g.cols and free[rr, cc] and (rr, cc) not in seen:
                seen.add((rr, cc))
                q.append((rr, cc))
    return {(r + 1, c + 1) for r, c in seen}


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = next((m for m in list(sys.modules.values()) if hasattr(m, "ACCEPTANCE_RESULTS")), None)
    if mod is None or not mod.ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.ACCEPTANCE_RESULTS):
        terminalreporter.write_line(mod.ACCEPTANCE_RESULTS[n])
