"""Grid kernels for the simulator: raycasting, frontier scan, BFS.

These dominate simulation runtime (181 beams per tick, tens of thousands
of ticks per acceptance run), so they are compiled with numba when
available.  Setting ``SCCLANG_NO_NUMBA=1`` in the environment selects the
uncompiled pure Python/numpy path instead; both paths run the same
function bodies, so results agree to floating-point noise and the test
suite compares them directly.  ``tools/bench_kernels.py`` times one
against the other.

Geometry: cell (r, c) covers x in [c*cell, (c+1)*cell) and y likewise in
rows; positions are in meters, angles in radians with theta=0 along +x.
"""

from __future__ import annotations

import math
import os

import numpy as np

USE_NUMBA = os.environ.get("SCCLANG_NO_NUMBA", "") not in ("1", "true", "yes")

if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a hard dependency
        USE_NUMBA = False

if not USE_NUMBA:
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda fn: fn


@njit(cache=True)
def raycast_kernel(occ, known, x, y, theta, beams, fov, max_range, cell):
    """Cast ``beams`` rays over ``fov`` centered on ``theta``.

    Returns the distance to the first occupied cell boundary per beam,
    clamped to ``max_range``; marks every traversed cell (and a hit wall
    cell) in ``known`` in place.
    """
    rows, cols = occ.shape
    ranges = np.empty(beams, dtype=np.float64)
    for i in range(beams):
        if beams > 1:
            angle = theta - fov / 2.0 + i * (fov / (beams - 1))
        else:
            angle = theta
        dx = math.cos(angle)
        dy = math.sin(angle)
        c = int(math.floor(x / cell))
        r = int(math.floor(y / cell))
        if 0 <= r < rows and 0 <= c < cols:
            known[r, c] = 1
        if dx > 0.0:
            step_c = 1
            t_max_x = ((c + 1) * cell - x) / dx
            t_delta_x = cell / dx
        elif dx < 0.0:
            step_c = -1
            t_max_x = (c * cell - x) / dx
            t_delta_x = -cell / dx
        else:
            step_c = 0
            t_max_x = 1e30
            t_delta_x = 1e30
        if dy > 0.0:
            step_r = 1
            t_max_y = ((r + 1) * cell - y) / dy
            t_delta_y = cell / dy
        elif dy < 0.0:
            step_r = -1
            t_max_y = (r * cell - y) / dy
            t_delta_y = -cell / dy
        else:
            step_r = 0
            t_max_y = 1e30
            t_delta_y = 1e30
        dist = 0.0
        result = max_range
        while True:
            if t_max_x < t_max_y:
                dist = t_max_x
                t_max_x += t_delta_x
                c += step_c
            else:
                dist = t_max_y
                t_max_y += t_delta_y
                r += step_r
            if dist > max_range:
                result = max_range
                break
            if r < 0 or r >= rows or c < 0 or c >= cols:
                result = dist if dist < max_range else max_range
                break
            known[r, c] = 1
            if occ[r, c] != 0:
                result = dist
                break
        ranges[i] = result
    return ranges


@njit(cache=True)
def segment_walk(occ, x0, y0, x1, y1, cell):
    """Advance from (x0, y0) toward (x1, y1), stopping at occupied cells.

    Returns (x, y, collided): the reached position, clamped just before
    the boundary of the first occupied or out-of-grid cell on the way.
    """
    rows, cols = occ.shape
    dx = x1 - x0
    dy = y1 - y0
    length = math.hypot(dx, dy)
    if length == 0.0:
        return x0, y0, False
    ux = dx / length
    uy = dy / length
    c = int(math.floor(x0 / cell))
    r = int(math.floor(y0 / cell))
    if ux > 0.0:
        step_c = 1
        t_max_x = ((c + 1) * cell - x0) / ux
        t_delta_x = cell / ux
    elif ux < 0.0:
        step_c = -1
        t_max_x = (c * cell - x0) / ux
        t_delta_x = -cell / ux
    else:
        step_c = 0
        t_max_x = 1e30
        t_delta_x = 1e30
    if uy > 0.0:
        step_r = 1
        t_max_y = ((r + 1) * cell - y0) / uy
        t_delta_y = cell / uy
    elif uy < 0.0:
        step_r = -1
        t_max_y = (r * cell - y0) / uy
        t_delta_y = -cell / uy
    else:
        step_r = 0
        t_max_y = 1e30
        t_delta_y = 1e30
    while True:
        if t_max_x < t_max_y:
            boundary = t_max_x
            t_max_x += t_delta_x
            c += step_c
        else:
            boundary = t_max_y
            t_max_y += t_delta_y
            r += step_r
        if boundary > length:
            return x1, y1, False
        blocked = (r < 0 or r >= rows or c < 0 or c >= cols
                   or occ[r, c] != 0)
        if blocked:
            back = boundary - 1e-9
            if back < 0.0:
                back = 0.0
            return x0 + ux * back, y0 + uy * back, True


@njit(cache=True)
def frontier_kernel(occ, known):
    """Mask of frontier cells: known free cells 4-adjacent to unknown."""
    rows, cols = occ.shape
    mask = np.zeros((rows, cols), dtype=np.uint8)
    for r in range(rows):
        for cc in range(cols):
            if known[r, cc] == 0 or occ[r, cc] != 0:
                continue
            if r > 0 and known[r - 1, cc] == 0:
                mask[r, cc] = 1
            elif r < rows - 1 and known[r + 1, cc] == 0:
                mask[r, cc] = 1
            elif cc > 0 and known[r, cc - 1] == 0:
                mask[r, cc] = 1
            elif cc < cols - 1 and known[r, cc + 1] == 0:
                mask[r, cc] = 1
    return mask


@njit(cache=True)
def bfs_kernel(passable, start_r, start_c):
    """4-connected BFS over a passable mask.

    Returns (dist, parent): int32 grids where dist is -1 for unreachable
    cells and parent holds the flat index of the predecessor (-1 at the
    start).  Neighbor order is up, down, left, right, which fixes paths
    deterministically.
    """
    rows, cols = passable.shape
    dist = np.full((rows, cols), -1, dtype=np.int32)
    parent = np.full((rows, cols), -1, dtype=np.int32)
    queue = np.empty(rows * cols, dtype=np.int32)
    if (start_r < 0 or start_r >= rows or start_c < 0 or start_c >= cols
            or passable[start_r, start_c] == 0):
        return dist, parent
    head = 0
    tail = 0
    queue[tail] = start_r * cols + start_c
    tail += 1
    dist[start_r, start_c] = 0
    while head < tail:
        idx = queue[head]
        head += 1
        r = idx // cols
        c = idx % cols
        d = dist[r, c]
        for k in range(4):
            if k == 0:
                nr, nc = r - 1, c
            elif k == 1:
                nr, nc = r + 1, c
            elif k == 2:
                nr, nc = r, c - 1
            else:
                nr, nc = r, c + 1
            if nr < 0 or nr >= rows or nc < 0 or nc >= cols:
                continue
            if passable[nr, nc] == 0 or dist[nr, nc] >= 0:
                continue
            dist[nr, nc] = d + 1
            parent[nr, nc] = idx
            queue[tail] = nr * cols + nc
            tail += 1
    return dist, parent


def frontier_mask_numpy(occ, known):
    """Vectorized frontier scan; reference twin of frontier_kernel."""
    free_known = (known != 0) & (occ == 0)
    unknown = known == 0
    near_unknown = np.zeros_like(free_known)
    near_unknown[1:, :] |= unknown[:-1, :]
    near_unknown[:-1, :] |= unknown[1:, :]
    near_unknown[:, 1:] |= unknown[:, :-1]
    near_unknown[:, :-1] |= unknown[:, 1:]
    return (free_known & near_unknown).astype(np.uint8)


def warmup():
    """Force JIT compilation so timing-sensitive runs pay it up front."""
    occ = np.zeros((4, 4), dtype=np.uint8)
    known = np.zeros((4, 4), dtype=np.uint8)
    raycast_kernel(occ, known, 0.15, 0.15, 0.0, 3, math.pi, 1.0, 0.1)
    segment_walk(occ, 0.15, 0.15, 0.2, 0.2, 0.1)
    frontier_kernel(occ, known)
    bfs_kernel(np.ones((4, 4), dtype=np.uint8), 0, 0)
