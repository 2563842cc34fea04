# GENERATED — DO NOT EDIT.
# Produced by the design compiler; changes here are lost on the next
# `scclang compile`. Implement components by subclassing instead.

"""Entity class Exploration."""

import abc

from scclang.runtime import EntityBase


class AbstractExploration(EntityBase, abc.ABC):
    """Wraps one Exploration device/capability; subclass and implement."""

    COMPONENT_NAME = "Exploration"

    def __init__(self):
        super().__init__("Exploration", {})

    def publishTwist(self, value):
        """Publish on the twist source (Twist)."""
        self._publish("twist", value)
