"""Classical coverage planners: Spiral-STC and ZigZag (boustrophedon)."""
from __future__ import annotations

from collections import deque

import numpy as np
from scipy import ndimage

from ._pykernel import _step, escape_path
from .colony import Tour, resolve_start
from .gridmap import CellCoord, OccupancyGrid


def _component(grid: OccupancyGrid, start_k: int) -> np.ndarray:
    """Flat mask of free cells 4-connected to ``start_k``."""
    lab, _ = ndimage.label(grid.free.reshape(grid.shape))
    lab = lab.ravel()
    return (lab == lab[start_k]).astype(np.uint8)


class _Stitcher:
    """Shortest free paths between cells, reusing scratch arrays across queries."""

    def __init__(self, free, rows, cols):
        self.free, self.rows, self.cols = free, rows, cols
        n = rows * cols
        self.parent = [0] * n
        self.mark = [0] * n
        self.stamp = 0

    def path(self, src, dst):
        """Cells from src (exclusive) to dst (inclusive)."""
        cols = self.cols
        diff = dst - src
        if diff == cols or diff == -cols or (diff == 1 and dst % cols) or (diff == -1 and src % cols):
            return [dst]
        self.stamp += 1
        stamp, mark, parent, free = self.stamp, self.mark, self.parent, self.free
        n = self.rows * cols
        mark[src] = stamp
        queue = deque([src])
        while queue:
            c = queue.popleft()
            if c == dst:
                break
            col = c % cols
            for nb in (c - cols, c + cols, c - 1 if col else -1, c + 1 if col + 1 < cols else -1):
                if 0 <= nb < n and free[nb] and mark[nb] != stamp:
                    mark[nb] = stamp
                    parent[nb] = c
                    queue.append(nb)
        if mark[dst] != stamp:
            raise RuntimeError("stitching target unreachable")
        out = []
        c = dst
        while c != src:
            out.append(c)
            c = parent[c]
        out.reverse()
        return out


# -- Spiral-STC ---------------------------------------------------------------

_MEGA_STEPS = ((-1, 0), (0, -1), (1, 0), (0, 1))  # DFS order: up, left, down, right


def _mega_tree(mask2d: np.ndarray, root: tuple[int, int]) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Depth-first spanning tree over 2x2 mega-cells.

    Two mega-cells are joined only if some pair of reachable sub-cells
    touches across their shared side.
    """
    rows, cols = mask2d.shape
    mr, mc = (rows + 1) // 2, (cols + 1) // 2
    padded = np.zeros((2 * mr, 2 * mc + 1), dtype=bool)
    padded[:rows, :cols] = mask2d.astype(bool)
    # hlink[a, b]: mega (a, b) joins (a, b + 1); vlink[a, b]: (a, b) joins (a + 1, b)
    touch_h = padded[:, 1:-1:2] & padded[:, 2::2]
    hlink = touch_h.reshape(mr, 2, mc).any(axis=1)
    padded = padded[:, :-1]
    padded_v = np.vstack([padded, np.zeros((1, 2 * mc), dtype=bool)])
    touch_v = padded_v[1:-1:2, :] & padded_v[2::2, :]
    vlink = touch_v.reshape(mr, mc, 2).any(axis=2)

    def linked(a, b):
        if a[0] == b[0]:
            return bool(hlink[a[0], min(a[1], b[1])])
        return bool(vlink[min(a[0], b[0]), a[1]])

    occupied = padded.reshape(mr, 2, mc, 2).any(axis=(1, 3))
    seen = {root}
    edges = []
    stack = [(root, iter(_MEGA_STEPS))]
    while stack:
        node, it = stack[-1]
        for dr, dc in it:
            nb = (node[0] + dr, node[1] + dc)
            if 0 <= nb[0] < mr and 0 <= nb[1] < mc and occupied[nb] and nb not in seen and linked(node, nb):
                seen.add(nb)
                edges.append((node, nb))
                stack.append((nb, iter(_MEGA_STEPS)))
                break
        else:
            stack.pop()
    return edges


def _circumnavigation(nodes: set, edges, mc: int) -> dict[int, list[int]]:
    """Sub-cell cycle around the tree: each padded offset maps to its two cycle neighbours."""
    width = 2 * mc
    adj: dict[int, list[int]] = {}

    def sub(m, dy, dx):
        return (2 * m[0] + dy) * width + 2 * m[1] + dx

    def swap(a, old, new):
        nb = adj[a]
        nb[nb.index(old)] = new

    for m in nodes:
        tl, tr, br, bl = sub(m, 0, 0), sub(m, 0, 1), sub(m, 1, 1), sub(m, 1, 0)
        adj[tl] = [tr, bl]
        adj[tr] = [tl, br]
        adj[br] = [tr, bl]
        adj[bl] = [br, tl]
    for a, b in edges:
        if a[0] > b[0] or a[1] > b[1]:
            a, b = b, a
        if a[0] == b[0]:  # a left of b: cut both facing sides, cross-link
            p, q, x, y = sub(a, 0, 1), sub(a, 1, 1), sub(b, 0, 0), sub(b, 1, 0)
        else:  # a above b
            p, q, x, y = sub(a, 1, 0), sub(a, 1, 1), sub(b, 0, 0), sub(b, 0, 1)
        swap(p, q, x)
        swap(q, p, y)
        swap(x, y, p)
        swap(y, x, q)
    return {k: sorted(v) for k, v in adj.items()}


def spiral_stc(grid: OccupancyGrid, start: CellCoord | None = None) -> Tour:
    """Spanning-tree coverage over 2x2 mega-cells.

    Sub-cells that are blocked (or outside an odd-sized grid) are skipped
    while walking the circumnavigation cycle; gaps are bridged with BFS
    shortest paths, which is where re-covered cells come from.
    """
    start = resolve_start(grid, start)
    rows, cols = grid.shape
    start_k = grid.offset(start)
    mask = _component(grid, start_k)
    mr, mc = (rows + 1) // 2, (cols + 1) // 2
    width = 2 * mc
    root = ((start.i - 1) // 2, (start.j - 1) // 2)
    edges = _mega_tree(mask.reshape(rows, cols), root)
    nodes = {root} | {b for _, b in edges}
    adj = _circumnavigation(nodes, edges, mc)

    s = (start.i - 1) * width + (start.j - 1)
    order = [s]
    prev, cur = s, adj[s][0]
    while cur != s:
        order.append(cur)
        a, b = adj[cur]
        prev, cur = cur, (b if a == prev else a)

    stitch = _Stitcher(grid.free.tolist(), rows, cols)
    seen = np.zeros(grid.size, dtype=np.uint8)
    seen[start_k] = 1
    tour = [start_k]
    here = start_k
    for p in order[1:]:
        r, c = divmod(p, width)
        if r >= rows or c >= cols:
            continue
        k = r * cols + c
        if not mask[k] or seen[k]:
            continue
        for step in stitch.path(here, k):
            seen[step] = 1
            tour.append(step)
        here = k
    return Tour(np.array(tour, dtype=np.int32), rows, cols)


# -- ZigZag -------------------------------------------------------------------


def zigzag(grid: OccupancyGrid, start: CellCoord | None = None, orientation: str = "rows") -> Tour:
    """Lawnmower sweep: along a row, drop one row at the end, reverse; BFS detours around blockages.

    ``orientation="columns"`` sweeps columns instead.
    """
    start = resolve_start(grid, start)
    if orientation == "columns":
        t = OccupancyGrid(grid.probs.T, grid.resolution)
        sub = zigzag(t, CellCoord(start.j, start.i), "rows")
        offs = sub.offsets.astype(np.int64)
        offs = (offs % t.cols) * grid.cols + offs // t.cols
        return Tour(offs.astype(np.int32), grid.rows, grid.cols)
    if orientation != "rows":
        raise ValueError(f"orientation must be 'rows' or 'columns', got {orientation!r}")

    rows, cols = grid.shape
    free = grid.free.tolist()
    cur = grid.offset(start)
    target = int(_component(grid, cur).sum())
    visited = [0] * grid.size
    visited[cur] = 1
    count = 1
    tour = [cur]
    heading = 3  # right

    def open_(k):
        return k >= 0 and free[k] and not visited[k]

    while count < target:
        ahead = _step(cur, heading, rows, cols)
        below = _step(cur, 1, rows, cols)
        if open_(ahead):
            path = [ahead]
        elif open_(below):
            path = [below]
            heading = 2 if heading == 3 else 3
        else:
            path = escape_path(free, rows, cols, visited, cur)
            if not path:
                break
        for k in path:
            if not visited[k]:
                visited[k] = 1
                count += 1
            tour.append(k)
        cur = tour[-1]
        if len(path) > 1 or not open_(_step(cur, heading, rows, cols)):
            # after a detour, face whichever side still has work
            if open_(_step(cur, 3, rows, cols)):
                heading = 3
            elif open_(_step(cur, 2, rows, cols)):
                heading = 2
    return Tour(np.array(tour, dtype=np.int32), rows, cols)
