"""Frontier-based exploration: pick a frontier, drive to it, look around.

Goal selection: frontier cells (known-free cells touching unknown space)
are clustered by 4-connectivity; each cluster is represented by the
member cell nearest its centroid; the representative with the shortest
BFS path from the robot wins, ties broken by smallest (row, col).  The
path is planned over known-free cells only and followed waypoint by
waypoint, rotating in place until the heading error drops below the
alignment tolerance and then driving forward.  A new plan is made when
the goal is reached, the path is invalidated by newly observed obstacles,
or there is no goal yet; an empty frontier set means exploration is
complete and the robot stops.
"""

from __future__ import annotations

import math
from typing import List, Optional, Set, Tuple

import numpy as np

from .kernels import bfs_kernel, frontier_kernel
from .logic import STOP, TwistPair, wrap_angle
from .world import SimConfig, World

Cell = Tuple[int, int]


def frontier_cells(known: np.ndarray, occ: np.ndarray) -> Set[Cell]:
    """Exactly the known-free cells 4-adjacent to at least one unknown cell."""
    mask = frontier_kernel(occ, known)
    rs, cs = np.nonzero(mask)
    return {(int(r), int(c)) for r, c in zip(rs, cs)}


def cluster_frontiers(mask: np.ndarray) -> List[List[Cell]]:
    """4-connected clusters of a frontier mask, in deterministic scan order."""
    rows, cols = mask.shape
    seen = np.zeros_like(mask)
    clusters: List[List[Cell]] = []
    for r in range(rows):
        for c in range(cols):
            if mask[r, c] == 0 or seen[r, c]:
                continue
            stack = [(r, c)]
            seen[r, c] = 1
            members: List[Cell] = []
            while stack:
                cr, cc = stack.pop()
                members.append((cr, cc))
                for nr, nc in ((cr - 1, cc), (cr + 1, cc),
                               (cr, cc - 1), (cr, cc + 1)):
                    if 0 <= nr < rows and 0 <= nc < cols \
                            and mask[nr, nc] != 0 and not seen[nr, nc]:
                        seen[nr, nc] = 1
                        stack.append((nr, nc))
            clusters.append(sorted(members))
    return clusters


def cluster_representative(members: List[Cell]) -> Cell:
    """Member nearest the cluster centroid; ties to smallest (row, col)."""
    mr = sum(m[0] for m in members) / len(members)
    mc = sum(m[1] for m in members) / len(members)
    return min(members,
               key=lambda m: ((m[0] - mr) ** 2 + (m[1] - mc) ** 2, m))


def extract_path(parent: np.ndarray, goal: Cell) -> List[Cell]:
    cols = parent.shape[1]
    path = [goal]
    idx = parent[goal[0], goal[1]]
    while idx >= 0:
        cell = (int(idx) // cols, int(idx) % cols)
        path.append(cell)
        idx = parent[cell[0], cell[1]]
    path.reverse()
    return path


class FrontierPlanner:
    """Stateful goal selection and waypoint steering for one robot."""

    def __init__(self, cfg: SimConfig):
        self.cfg = cfg
        self.goal: Optional[Cell] = None
        self.path: List[Cell] = []
        self.path_idx: int = 0
        self.complete: bool = False
        self.replans: int = 0

    # -- planning --------------------------------------------------------------

    def _plan(self, world: World) -> None:
        self.goal = None
        self.path = []
        self.path_idx = 0
        mask = frontier_kernel(world.occ, world.known)
        if not mask.any():
            self.complete = True
            return
        robot = world.cell_of(self.cfg.cell_size)
        passable = world.known_free()
        dist, parent = bfs_kernel(passable, robot[0], robot[1])
        candidates = []
        for members in cluster_frontiers(mask):
            rep = cluster_representative(members)
            d = int(dist[rep[0], rep[1]])
            if d >= 0:
                candidates.append((d, rep))
        if not candidates:
            # Should be unreachable: every known-free cell is scan-connected
            # to the robot. Treated as completion rather than spinning.
            self.complete = True
            return
        _, goal = min(candidates)
        self.goal = goal
        self.path = extract_path(parent, goal)
        self.path_idx = 0
        self.replans += 1

    def _path_invalidated(self, world: World) -> bool:
        for r, c in self.path[self.path_idx:]:
            if world.occ[r, c] != 0 and world.known[r, c] != 0:
                return True
        return False

    # -- steering ----------------------------------------------------------------

    def _cell_center(self, cell: Cell) -> Tuple[float, float]:
        s = self.cfg.cell_size
        return ((cell[1] + 0.5) * s, (cell[0] + 0.5) * s)

    def twist_for(self, world: World) -> TwistPair:
        """Next (linear_x, angular_z) command; (0, 0) when exploration is done.

        Reaching a goal that is still a frontier (the scan covers a
        half-plane, so the space behind the robot stays unknown) triggers
        an in-place observation spin until the surroundings are known;
        only then is the next goal chosen.
        """
        if self.complete:
            return STOP
        if self.goal is None or self._path_invalidated(world):
            self._plan(world)
        if self.complete or self.goal is None:
            return STOP
        near = 0.3 * self.cfg.cell_size
        replanned_once = False
        while True:
            # Advance past waypoints the robot has effectively reached.
            while self.path_idx < len(self.path) - 1:
                wx, wy = self._cell_center(self.path[self.path_idx])
                if math.hypot(wx - world.x, wy - world.y) < near:
                    self.path_idx += 1
                else:
                    break
            wx, wy = self._cell_center(self.path[self.path_idx])
            distance = math.hypot(wx - world.x, wy - world.y)
            if self.path_idx == len(self.path) - 1 and distance < near:
                goal = self.path[self.path_idx]
                mask = frontier_kernel(world.occ, world.known)
                if mask[goal[0], goal[1]] and \
                        world.cell_of(self.cfg.cell_size) == goal:
                    return (0.0, self.cfg.turn_rate)  # observe the area
                if replanned_once:
                    return STOP
                self._plan(world)
                replanned_once = True
                if self.complete or self.goal is None:
                    return STOP
                continue
            break
        error = wrap_angle(math.atan2(wy - world.y, wx - world.x) - world.theta)
        if abs(error) >= self.cfg.align_tolerance:
            direction = 1.0 if error >= 0 else -1.0
            return (0.0, direction * self.cfg.turn_rate)
        return (self.cfg.forward_speed, 0.0)
