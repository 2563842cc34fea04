# GENERATED — DO NOT EDIT.
# Produced by the design compiler; changes here are lost on the next
# `scclang compile`. Implement components by subclassing instead.

"""Context operator ObstacleDetection (output Obstacle)."""

import abc

from scclang.runtime import ContextBase, DiscoveryProxy


class AbstractObstacleDetection(ContextBase, abc.ABC):
    """Refines its inputs into Obstacle values; subclass and implement."""

    COMPONENT_NAME = "ObstacleDetection"

    _DISPATCH = {
        ("LaserScan", "ranges"): "_callOnRanges",
    }

    def __init__(self):
        super().__init__("ObstacleDetection")
        self.discoverLaserScanForSubscribe = DiscoveryProxy(
            self, "LaserScan", {"ranges": "subscribeRanges"})

    @abc.abstractmethod
    def onRanges(self, value, pulls):
        """React to a LaserScan.ranges event (Float[])."""

    def _callOnRanges(self, event):
        self.onRanges(event.value, self._pulls)

    def publishObstacleDetection(self, value):
        """Publish the ObstacleDetection output (Obstacle)."""
        self._publish_output(value)
