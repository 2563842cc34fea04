"""Case-study component implementations, deployed on the generated framework.

Each class subclasses its generated abstraction and implements the
abstract callbacks/handlers; decision logic lives in ``logic.py`` and
``explore.py``.  The simulated entities bridge to the world model the
same way the original entities bridged to a robot middleware.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .explore import FrontierPlanner
from .generated.Camera import AbstractCamera
from .generated.Exploration import AbstractExploration
from .generated.LaserScan import AbstractLaserScan
from .generated.Light import AbstractLight
from .generated.ModeSelector import AbstractModeSelector
from .generated.Motion import AbstractMotion
from .generated.MotionController import AbstractMotionController
from .generated.ObstacleDetection import AbstractObstacleDetection
from .generated.ObstacleManager import AbstractObstacleManager
from .generated.ObstacleZone import AbstractObstacleZone
from .generated.RandomMotion import AbstractRandomMotion
from .generated.Wheel import AbstractWheel
from .generated.datatypes import Mode, Obstacle, Twist, Vector3
from .generated.deploy import AbstractMainDeploy
from .logic import (RandomMotionPolicy, STOP, TwistPair, detect_front,
                    select_motion, zone_actions, zone_has_obstacle)
from .world import SimConfig, World

ZERO_TWIST = Twist(linear=Vector3(0.0, 0.0, 0.0), angular=Vector3(0.0, 0.0, 0.0))


def pair_to_twist(pair: TwistPair) -> Twist:
    return Twist(linear=Vector3(pair[0], 0.0, 0.0),
                 angular=Vector3(0.0, 0.0, pair[1]))


def twist_to_pair(twist: Twist) -> TwistPair:
    return (twist.linear.x, twist.angular.z)


class SimLaserScan(AbstractLaserScan):
    """Publishes one scan of the simulated world per tick."""

    def __init__(self, world: World, cfg: SimConfig):
        super().__init__()
        self._world = world
        self._cfg = cfg

    def tick(self):
        self.publishRanges(self._world.raycast(self._cfg))


class SimModeSelector(AbstractModeSelector):
    """Mode source fed by the operator (console or test harness)."""

    def __init__(self, initial_mode: Mode = Mode.RANDOM):
        super().__init__()
        self._mode = initial_mode

    def postInitialize(self):
        self.publishMode(self._mode)

    def set_mode(self, mode: Mode):
        self._mode = mode
        self.publishMode(mode)

    @property
    def mode(self) -> Mode:
        return self._mode


class SimExploration(AbstractExploration):
    """Wraps the frontier-exploration capability as a twist source."""

    def __init__(self, world: World, cfg: SimConfig):
        super().__init__()
        self._world = world
        self.planner = FrontierPlanner(cfg)

    def tick(self):
        self.publishTwist(pair_to_twist(self.planner.twist_for(self._world)))

    @property
    def complete(self) -> bool:
        return self.planner.complete


class SimLight(AbstractLight):
    def __init__(self, world: World):
        super().__init__()
        self._world = world

    def on(self):
        self._world.light_on = True

    def off(self):
        self._world.light_on = False


class SimCamera(AbstractCamera):
    """Records pose-stamped pictures instead of pixels."""

    def __init__(self, world: World, clock):
        super().__init__()
        self._world = world
        self._clock = clock

    def takePicture(self):
        self._world.pictures.append((self._clock.now_ms(), self._world.pose))


class SimWheel(AbstractWheel):
    """Holds the last twist ordered; the tick loop integrates it."""

    def __init__(self):
        super().__init__()
        self.command: Twist = ZERO_TWIST

    def roll(self, twist):
        self.command = twist


class ObstacleDetectionOperator(AbstractObstacleDetection):
    """Interprets raw ranges into an Obstacle value."""

    def __init__(self, cfg: SimConfig):
        super().__init__()
        self._cfg = cfg

    def postInitialize(self):
        self.discoverLaserScanForSubscribe.all().subscribeRanges()

    def onRanges(self, value, pulls):
        front = detect_front(value, self._cfg.front_threshold,
                             self._cfg.front_cone, self._cfg.fov)
        self.publishObstacleDetection(Obstacle(front=front, ranges=value))


class RandomMotionOperator(AbstractRandomMotion):
    """Twist producer for the random mode."""

    def __init__(self, cfg: SimConfig, seed: int):
        super().__init__()
        self._policy = RandomMotionPolicy(
            np.random.default_rng(seed), cfg.forward_speed, cfg.turn_rate,
            cfg.random_redraw_each_tick)

    def onObstacleDetection(self, value, pulls):
        self.publishRandomMotion(pair_to_twist(self._policy.step(value.front)))


class ObstacleZoneOperator(AbstractObstacleZone):
    """Boolean zone indicator derived from obstacle proximity."""

    def __init__(self, cfg: SimConfig):
        super().__init__()
        self._cfg = cfg

    def onObstacleDetection(self, value, pulls):
        self.publishObstacleZone(
            zone_has_obstacle(value.ranges, self._cfg.zone_threshold))


class MotionOperator(AbstractMotion):
    """Selects the active mode's twist; latest-value semantics per input."""

    def __init__(self):
        super().__init__()
        self._mode: Optional[Mode] = None
        self._random: Optional[Twist] = None
        self._exploration: Optional[Twist] = None

    def postInitialize(self):
        self.discoverExplorationForSubscribe.all().subscribeTwist()
        self.discoverModeSelectorForSubscribe.all().subscribeMode()

    def _select(self) -> Twist:
        mode = self._mode.value if self._mode is not None else None
        pair = select_motion(
            mode,
            twist_to_pair(self._random) if self._random else None,
            twist_to_pair(self._exploration) if self._exploration else None)
        return pair_to_twist(pair)

    def onRandomMotion(self, value, pulls):
        self._random = value
        self.publishMotion(self._select())

    def onTwist(self, value, pulls):
        self._exploration = value
        self.publishMotion(self._select())

    def onMode(self, value, pulls):
        self._mode = value
        self.publishMotion(self._select())


class MotionControllerOperator(AbstractMotionController):
    def onMotion(self, value, actions):
        actions.wheel.roll(value)


class ObstacleManagerOperator(AbstractObstacleManager):
    """Light follows the zone level; pictures on entering a zone."""

    def __init__(self):
        super().__init__()
        self._in_zone = False

    def onObstacleZone(self, value, actions):
        for action in zone_actions(bool(value), self._in_zone):
            if action == "Light.On":
                actions.light.on()
            elif action == "Light.Off":
                actions.light.off()
            elif action == "Camera.TakePicture":
                actions.camera.takePicture()
        self._in_zone = bool(value)


class SimMainDeploy(AbstractMainDeploy):
    """Factories wiring the simulated case study together."""

    def __init__(self, world: World, cfg: SimConfig, seed: int,
                 initial_mode: Mode, clock):
        self.world = world
        self.cfg = cfg
        self.seed = seed
        self.initial_mode = initial_mode
        self.clock = clock
        self.laser: Optional[SimLaserScan] = None
        self.exploration: Optional[SimExploration] = None
        self.mode_selector: Optional[SimModeSelector] = None
        self.wheel: Optional[SimWheel] = None

    def createLaserScan(self):
        self.laser = SimLaserScan(self.world, self.cfg)
        return self.laser

    def createModeSelector(self):
        self.mode_selector = SimModeSelector(self.initial_mode)
        return self.mode_selector

    def createExploration(self):
        self.exploration = SimExploration(self.world, self.cfg)
        return self.exploration

    def createLight(self):
        return SimLight(self.world)

    def createCamera(self):
        return SimCamera(self.world, self.clock)

    def createWheel(self):
        self.wheel = SimWheel()
        return self.wheel

    def createObstacleDetection(self):
        return ObstacleDetectionOperator(self.cfg)

    def createRandomMotion(self):
        return RandomMotionOperator(self.cfg, self.seed)

    def createObstacleZone(self):
        return ObstacleZoneOperator(self.cfg)

    def createMotion(self):
        return MotionOperator()

    def createMotionController(self):
        return MotionControllerOperator()

    def createObstacleManager(self):
        return ObstacleManagerOperator()
