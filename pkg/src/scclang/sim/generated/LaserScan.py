# GENERATED — DO NOT EDIT.
# Produced by the design compiler; changes here are lost on the next
# `scclang compile`. Implement components by subclassing instead.

"""Entity class LaserScan."""

import abc

from scclang.runtime import EntityBase


class AbstractLaserScan(EntityBase, abc.ABC):
    """Wraps one LaserScan device/capability; subclass and implement."""

    COMPONENT_NAME = "LaserScan"

    def __init__(self):
        super().__init__("LaserScan", {})

    def publishRanges(self, value):
        """Publish on the ranges source (Float[])."""
        self._publish("ranges", value)
