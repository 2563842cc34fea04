"""Occupancy-grid world: map loading, laser raycasting, unicycle motion.

Map files are text grids.  The first line is ``width height``; then
``height`` rows of ``#`` (occupied), ``.`` (free) and exactly one ``R``
(robot start, free).  The first row of the file is the top of the map;
internally row 0 is the bottom so +y points up and theta=0 points right.

The robot is a point with unicycle kinematics integrated per tick:
heading first (``theta += wz*dt``), then position along the new heading.
Motion into an occupied cell stops at the cell boundary and latches the
collision flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import List, Optional, Tuple

import numpy as np

from .kernels import raycast_kernel, segment_walk


@dataclass(frozen=True)
class SimConfig:
    """All simulator constants; every value can come from a config file."""

    cell_size: float = 0.1      # m
    beams: int = 181
    fov: float = math.pi        # rad
    max_range: float = 4.0      # m
    dt: float = 0.1             # s
    forward_speed: float = 0.5  # m/s   (vF)
    turn_rate: float = 1.0      # rad/s (wT)
    front_threshold: float = 0.6  # m
    front_cone: float = math.pi / 2  # rad
    zone_threshold: float = 1.0   # m
    align_tolerance: float = 0.2  # rad, rotate-then-drive switch point
    random_redraw_each_tick: bool = False  # redraw turn direction per tick

    @classmethod
    def from_file(cls, path: str, **overrides) -> "SimConfig":
        """Read ``key = value`` lines; unknown keys are rejected."""
        values = {}
        fields = {f.name: f.type for f in cls.__dataclass_fields__.values()}
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ValueError(f"{path}:{lineno}: expected 'key = value'")
                key, _, value = line.partition("=")
                key = key.strip()
                value = value.strip()
                if key not in fields:
                    raise ValueError(f"{path}:{lineno}: unknown setting {key!r}")
                if key == "beams":
                    values[key] = int(value)
                elif key == "random_redraw_each_tick":
                    values[key] = value.lower() in ("1", "true", "yes")
                else:
                    values[key] = float(value)
        values.update(overrides)
        return cls(**values)


class MapError(ValueError):
    pass


@dataclass
class World:
    """Ground-truth grid plus the robot's accumulated knowledge of it."""

    occ: np.ndarray            # uint8, 1 = occupied
    known: np.ndarray          # uint8, 1 = observed by some past scan
    x: float
    y: float
    theta: float
    light_on: bool = False
    pictures: List[Tuple[int, Tuple[float, float, float]]] = field(
        default_factory=list)
    collided: bool = False
    collision_count: int = 0

    @property
    def rows(self) -> int:
        return self.occ.shape[0]

    @property
    def cols(self) -> int:
        return self.occ.shape[1]

    @property
    def pose(self) -> Tuple[float, float, float]:
        return (self.x, self.y, self.theta)

    def cell_of(self, cell_size: float) -> Tuple[int, int]:
        return (int(math.floor(self.y / cell_size)),
                int(math.floor(self.x / cell_size)))

    @classmethod
    def from_text(cls, text: str, cell_size: float = 0.1,
                  theta: float = 0.0) -> "World":
        lines = [ln.rstrip("\r") for ln in text.splitlines()]
        lines = [ln for ln in lines if ln.strip() != ""]
        if not lines:
            raise MapError("empty map")
        header = lines[0].split()
        if len(header) != 2:
            raise MapError("first line must be 'width height'")
        try:
            cols, rows = int(header[0]), int(header[1])
        except ValueError as exc:
            raise MapError("first line must be 'width height'") from exc
        body = lines[1:]
        if len(body) != rows:
            raise MapError(f"expected {rows} map rows, found {len(body)}")
        occ = np.zeros((rows, cols), dtype=np.uint8)
        start: Optional[Tuple[int, int]] = None
        for file_r, line in enumerate(body):
            if len(line) != cols:
                raise MapError(
                    f"map row {file_r + 1} has {len(line)} cells, expected "
                    f"{cols}")
            r = rows - 1 - file_r  # file top row becomes highest y
            for c, ch in enumerate(line):
                if ch == "#":
                    occ[r, c] = 1
                elif ch == "R":
                    if start is not None:
                        raise MapError("more than one robot start 'R'")
                    start = (r, c)
                elif ch != ".":
                    raise MapError(f"bad map character {ch!r}")
        if start is None:
            raise MapError("missing robot start 'R'")
        known = np.zeros((rows, cols), dtype=np.uint8)
        x = (start[1] + 0.5) * cell_size
        y = (start[0] + 0.5) * cell_size
        return cls(occ=occ, known=known, x=x, y=y, theta=theta)

    @classmethod
    def from_map_file(cls, path: str, cell_size: float = 0.1) -> "World":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_text(fh.read(), cell_size)

    # -- sensing --------------------------------------------------------------

    def raycast(self, cfg: SimConfig) -> np.ndarray:
        """Scan and extend the known map; beams sweep cfg.fov around theta."""
        return raycast_kernel(self.occ, self.known, self.x, self.y,
                              self.theta, cfg.beams, cfg.fov, cfg.max_range,
                              cfg.cell_size)

    # -- motion ---------------------------------------------------------------

    def step(self, linear_x: float, angular_z: float, dt: float,
             cell_size: float) -> bool:
        """One unicycle integration step; True if motion hit an obstacle."""
        if dt <= 0:
            raise ValueError("dt must be positive")
        self.theta += angular_z * dt
        if linear_x == 0.0:
            return False
        nx = self.x + linear_x * math.cos(self.theta) * dt
        ny = self.y + linear_x * math.sin(self.theta) * dt
        self.x, self.y, hit = segment_walk(self.occ, self.x, self.y, nx, ny,
                                           cell_size)
        if hit:
            self.collided = True
            self.collision_count += 1
        return bool(hit)

    # -- knowledge metrics -------------------------------------------------------

    def known_count(self) -> int:
        return int(self.known.sum())

    def known_free(self) -> np.ndarray:
        return ((self.known != 0) & (self.occ == 0)).astype(np.uint8)

    def free_count(self) -> int:
        return int((self.occ == 0).sum())
