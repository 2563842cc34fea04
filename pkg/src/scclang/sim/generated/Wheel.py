# GENERATED — DO NOT EDIT.
# Produced by the design compiler; changes here are lost on the next
# `scclang compile`. Implement components by subclassing instead.

"""Entity class Wheel."""

import abc

from scclang.runtime import EntityBase


class AbstractWheel(EntityBase, abc.ABC):
    """Wraps one Wheel device/capability; subclass and implement."""

    COMPONENT_NAME = "Wheel"

    def __init__(self):
        super().__init__("Wheel", {})

    @abc.abstractmethod
    def roll(self, twist):
        """Perform the Roll action."""
