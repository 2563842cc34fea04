# GENERATED — DO NOT EDIT.
# Produced by the design compiler; changes here are lost on the next
# `scclang compile`. Implement components by subclassing instead.

"""Context operator RandomMotion (output Twist)."""

import abc

from scclang.runtime import ContextBase


class AbstractRandomMotion(ContextBase, abc.ABC):
    """Refines its inputs into Twist values; subclass and implement."""

    COMPONENT_NAME = "RandomMotion"

    _DISPATCH = {
        ("ObstacleDetection", "ObstacleDetection"): "_callOnObstacleDetection",
    }

    def __init__(self):
        super().__init__("RandomMotion")

    @abc.abstractmethod
    def onObstacleDetection(self, value, pulls):
        """React to a ObstacleDetection event (Obstacle)."""

    def _callOnObstacleDetection(self, event):
        self.onObstacleDetection(event.value, self._pulls)

    def publishRandomMotion(self, value):
        """Publish the RandomMotion output (Twist)."""
        self._publish_output(value)
