# GENERATED — DO NOT EDIT.
# Produced by the design compiler; changes here are lost on the next
# `scclang compile`. Implement components by subclassing instead.

"""Design-specific programming framework."""

from . import datatypes
from .Camera import AbstractCamera
from .Exploration import AbstractExploration
from .LaserScan import AbstractLaserScan
from .Light import AbstractLight
from .ModeSelector import AbstractModeSelector
from .Wheel import AbstractWheel
from .Motion import AbstractMotion
from .ObstacleDetection import AbstractObstacleDetection
from .ObstacleZone import AbstractObstacleZone
from .RandomMotion import AbstractRandomMotion
from .MotionController import AbstractMotionController
from .ObstacleManager import AbstractObstacleManager
from .deploy import DESIGN, AbstractMainDeploy

__all__ = [
    "datatypes",
    "AbstractCamera",
    "AbstractExploration",
    "AbstractLaserScan",
    "AbstractLight",
    "AbstractModeSelector",
    "AbstractWheel",
    "AbstractMotion",
    "AbstractObstacleDetection",
    "AbstractObstacleZone",
    "AbstractRandomMotion",
    "AbstractMotionController",
    "AbstractObstacleManager",
    "DESIGN",
    "AbstractMainDeploy",
]
