# GENERATED — DO NOT EDIT.
# Produced by the design compiler; changes here are lost on the next
# `scclang compile`. Implement components by subclassing instead.

"""Context operator ObstacleZone (output Boolean)."""

import abc

from scclang.runtime import ContextBase


class AbstractObstacleZone(ContextBase, abc.ABC):
    """Refines its inputs into Boolean values; subclass and implement."""

    COMPONENT_NAME = "ObstacleZone"

    _DISPATCH = {
        ("ObstacleDetection", "ObstacleDetection"): "_callOnObstacleDetection",
    }

    def __init__(self):
        super().__init__("ObstacleZone")

    @abc.abstractmethod
    def onObstacleDetection(self, value, pulls):
        """React to a ObstacleDetection event (Obstacle)."""

    def _callOnObstacleDetection(self, event):
        self.onObstacleDetection(event.value, self._pulls)

    def publishObstacleZone(self, value):
        """Publish the ObstacleZone output (Boolean)."""
        self._publish_output(value)
