"""Pure-Python tour construction kernel.

Reference semantics for ``_ckernel.pyx``; both must consume random numbers in
the same order and perform the same floating point operations so that a
given generator state produces identical tours.

Random draws per decision: one ``q``; if ``q > q0`` a second draw selects
from the cumulative weights.
"""
from __future__ import annotations

from collections import deque

import numpy as np


def _step(k, d, rows, cols):
    if d == 0:
        return k - cols if k >= cols else -1
    if d == 1:
        return k + cols if k + cols < rows * cols else -1
    if d == 2:
        return k - 1 if k % cols else -1
    return k + 1 if (k + 1) % cols else -1


def candidates(free, rows, cols, tau, cur, velocity, eta_pow, visited, stop_visited=True):
    """List of (direction, extent, landing, weight) for unvisited landing cells.

    A straight run stops before the first blocked cell and, with
    ``stop_visited``, before the first visited cell too.
    """
    out = []
    base = 4 * cur
    for d in range(4):
        c = cur
        e = 0
        while e < velocity:
            nb = _step(c, d, rows, cols)
            if nb < 0 or not free[nb] or (stop_visited and visited[nb]):
                break
            c = nb
            e += 1
        if e and not visited[c]:
            out.append((d, e, c, tau[base + d] * eta_pow[e]))
    return out


def choose(cands, q0, random):
    """Pseudo-random-proportional pick; returns the chosen candidate."""
    q = random()
    if q <= q0:
        best = cands[0]
        for c in cands[1:]:
            if c[3] > best[3]:
                best = c
        return best
    total = 0.0
    for c in cands:
        total += c[3]
    r = random() * total
    acc = 0.0
    for c in cands:
        acc += c[3]
        if r < acc:
            return c
    return cands[-1]


def escape_path(free, rows, cols, visited, cur):
    """Shortest path (excluding ``cur``) to the nearest unvisited free cell.

    Equidistant targets are ranked by column-major linear index.  Returns an
    empty list when no unvisited cell is reachable.
    """
    parent = {cur: -1}
    dist = {cur: 0}
    queue = deque([cur])
    best = -1
    best_key = -1
    best_dist = -1
    while queue:
        c = queue.popleft()
        if best_dist >= 0 and dist[c] >= best_dist:
            break
        for d in range(4):
            nb = _step(c, d, rows, cols)
            if nb < 0 or not free[nb] or nb in parent:
                continue
            parent[nb] = c
            dist[nb] = dist[c] + 1
            queue.append(nb)
            if not visited[nb]:
                key = (nb % cols) * rows + nb // cols
                if best_dist < 0:
                    best_dist = dist[nb]
                    best, best_key = nb, key
                elif key < best_key:
                    best, best_key = nb, key
    if best < 0:
        return []
    path = []
    c = best
    while c != cur:
        path.append(c)
        c = parent[c]
    path.reverse()
    return path


def construct_tour(free, rows, cols, tau, start, velocity, eta_pow, q0, alpha, tau0, rng, target, stop_visited=True):
    """Build one ant's coverage tour; updates ``tau`` in place.

    ``target`` is the number of free cells reachable from ``start``.
    ``alpha == 0`` disables local updates (test hook).
    """
    free_l = free.tolist() if isinstance(free, np.ndarray) else list(free)
    tau_l = tau.tolist()
    eta_l = list(eta_pow)
    n = rows * cols
    visited = [0] * n
    visited[start] = 1
    count = 1
    tour = [start]
    cur = start
    keep = 1.0 - alpha
    pull = alpha * tau0
    random = rng.random

    while count < target:
        cands = candidates(free_l, rows, cols, tau_l, cur, velocity, eta_l, visited, stop_visited)
        if cands:
            d, e, _, _ = choose(cands, q0, random)
            for _ in range(e):
                s = 4 * cur + d
                if alpha:
                    tau_l[s] = keep * tau_l[s] + pull
                cur = _step(cur, d, rows, cols)
                if not visited[cur]:
                    visited[cur] = 1
                    count += 1
                tour.append(cur)
        else:
            path = escape_path(free_l, rows, cols, visited, cur)
            if not path:
                break
            for nxt in path:
                diff = nxt - cur
                if diff == -cols:
                    d = 0
                elif diff == cols:
                    d = 1
                elif diff == -1:
                    d = 2
                else:
                    d = 3
                s = 4 * cur + d
                if alpha:
                    tau_l[s] = keep * tau_l[s] + pull
                cur = nxt
                if not visited[cur]:
                    visited[cur] = 1
                    count += 1
                tour.append(cur)

    tau[:] = tau_l
    return np.array(tour, dtype=np.int32)
