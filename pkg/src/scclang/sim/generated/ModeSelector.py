# GENERATED — DO NOT EDIT.
# Produced by the design compiler; changes here are lost on the next
# `scclang compile`. Implement components by subclassing instead.

"""Entity class ModeSelector."""

import abc

from scclang.runtime import EntityBase


class AbstractModeSelector(EntityBase, abc.ABC):
    """Wraps one ModeSelector device/capability; subclass and implement."""

    COMPONENT_NAME = "ModeSelector"

    def __init__(self):
        super().__init__("ModeSelector", {})

    def publishMode(self, value):
        """Publish on the mode source (Mode)."""
        self._publish("mode", value)
