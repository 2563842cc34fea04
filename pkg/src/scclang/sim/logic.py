"""Pure decision logic behind the case study's context and control operators.

Kept free of the framework so the unit tests exercise it directly; the
component implementations in ``components.py`` are thin wrappers around
these functions.  Twists are (linear_x, angular_z) pairs here; only the
framework layer wraps them into the declared Twist structure.
"""

from __future__ import annotations

import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

TwistPair = Tuple[float, float]

STOP: TwistPair = (0.0, 0.0)


def beam_offsets(beams: int, fov: float) -> np.ndarray:
    """Angular offset of each beam from the heading, evenly spaced."""
    if beams == 1:
        return np.zeros(1)
    return np.linspace(-fov / 2.0, fov / 2.0, beams)


def detect_front(ranges: np.ndarray, front_threshold: float,
                 front_cone: float, fov: float) -> bool:
    """True iff the nearest return within the front cone is under threshold.

    A return exactly at the threshold does not count (strict less-than).
    """
    ranges = np.asarray(ranges, dtype=np.float64)
    offsets = beam_offsets(len(ranges), fov)
    in_cone = np.abs(offsets) <= front_cone / 2.0 + 1e-12
    if not in_cone.any():
        return False
    return float(ranges[in_cone].min()) < front_threshold


def zone_has_obstacle(ranges: Sequence[float], zone_threshold: float) -> bool:
    """True iff any return anywhere in the scan is under the zone threshold."""
    return float(np.asarray(ranges).min()) < zone_threshold


class RandomMotionPolicy:
    """Go straight; when something is close ahead, turn until it is not.

    The turn direction is drawn from the seeded generator when a front
    obstacle first appears and held until the front clears, unless
    ``redraw_each_tick`` asks for a fresh draw every step.
    """

    def __init__(self, rng: np.random.Generator, forward_speed: float,
                 turn_rate: float, redraw_each_tick: bool = False):
        self._rng = rng
        self._forward = forward_speed
        self._turn = turn_rate
        self._redraw = redraw_each_tick
        self._direction: Optional[float] = None

    def step(self, front: bool) -> TwistPair:
        if not front:
            self._direction = None
            return (self._forward, 0.0)
        if self._direction is None or self._redraw:
            self._direction = 1.0 if self._rng.random() < 0.5 else -1.0
        return (0.0, self._direction * self._turn)


def select_motion(mode: Optional[str], random_twist: Optional[TwistPair],
                  exploration_twist: Optional[TwistPair]) -> TwistPair:
    """Route the twist of whichever mode is active; missing values stop."""
    if mode == "RANDOM":
        return random_twist if random_twist is not None else STOP
    if mode == "EXPLORATION":
        return exploration_twist if exploration_twist is not None else STOP
    return STOP


def zone_actions(in_zone: bool, prev_in_zone: bool) -> List[str]:
    """Actions for a zone transition: light follows the zone level and a
    picture is taken exactly on the rising edge."""
    if in_zone and not prev_in_zone:
        return ["Light.On", "Camera.TakePicture"]
    if prev_in_zone and not in_zone:
        return ["Light.Off"]
    return []


def wrap_angle(angle: float) -> float:
    """Map any angle into [-pi, pi)."""
    return (angle + math.pi) % (2.0 * math.pi) - math.pi
