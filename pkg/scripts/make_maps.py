"""Regenerate the stand-in benchmark maps under src/antcover/maps/.

office    -- small office with desks and a partition, 0.05 m cells
simulated -- random scattered obstacles, carved connected
basement  -- 28 x 18.5 m floor at 0.25 m cells (74 x 112), rooms off a corridor
"""
from pathlib import Path

import numpy as np

from antcover.harness import generate_random_map

OUT = Path(__file__).resolve().parents[1] / "src" / "antcover" / "maps"


def to_text(a):
    return "\n".join("".join(row) for row in a) + "\n"


def box(a, r0, c0, r1, c1, ch="#"):
    a[r0:r1, c0:c1] = ch


def office():
    a = np.full((22, 36), ".", dtype="<U1")
    a[0, :] = a[-1, :] = "#"
    a[:, 0] = a[:, -1] = "#"
    box(a, 0, 26, 5, 36, "?")  # unseen store room
    a[5, 26:36] = "#"
    a[0:6, 26] = "#"
    box(a, 1, 2, 4, 10)  # desks along the top wall
    box(a, 1, 13, 4, 21)
    box(a, 9, 6, 13, 16)  # meeting table
    a[7:22, 22] = "#"  # partition with a doorway
    a[14:17, 22] = "."
    box(a, 17, 2, 21, 5)  # cabinet
    box(a, 8, 27, 10, 33)  # desk in the second room
    box(a, 15, 28, 18, 30)
    a[6, 18] = a[6, 19] = "#"  # bin and chair
    return a


def basement():
    rows, cols = 74, 112
    a = np.full((rows, cols), ".", dtype="<U1")
    a[0, :] = a[-1, :] = "#"
    a[:, 0] = a[:, -1] = "#"
    # corridor band rows 32..41, walls either side
    a[31, :] = "#"
    a[42, :] = "#"
    rng = np.random.default_rng(18)
    for wall_row, span in ((31, range(1, 31)), (42, range(43, 73))):
        xs = [0, 24, 50, 78, cols - 1]
        for x0, x1 in zip(xs, xs[1:]):
            a[span.start : span.stop, x1] = "#" if x1 != cols - 1 else "#"
            door = int(rng.integers(x0 + 3, x1 - 5))
            a[wall_row, door : door + 4] = "."
    # pillars in the corridor
    for x in range(10, cols - 5, 16):
        box(a, 35, x, 38, x + 2)
    # shelving in the north-west room
    for y in range(4, 28, 6):
        box(a, y, 4, y + 2, 20)
    # boiler and tanks
    box(a, 5, 30, 14, 42)
    box(a, 20, 58, 26, 70)
    a[45:52, 90:100] = "#"
    # scattered clutter in the south rooms
    clutter = rng.random((29, cols)) < 0.04
    south = a[44:73, :]
    south[(south == ".") & clutter] = "#"
    # unexplored pocket
    box(a, 60, 100, 73, 111, "?")
    a[59, 99:112] = "#"
    a[59:74, 99] = "#"
    return a


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "office.txt").write_text(to_text(office()), encoding="utf-8")
    (OUT / "basement.txt").write_text(to_text(basement()), encoding="utf-8")
    (OUT / "simulated.txt").write_text(generate_random_map(32, 32, 0.12, seed=2022).to_ascii(), encoding="utf-8")
