# GENERATED — DO NOT EDIT.
# Produced by the design compiler; changes here are lost on the next
# `scclang compile`. Implement components by subclassing instead.

"""Entity class Light."""

import abc

from scclang.runtime import EntityBase


class AbstractLight(EntityBase, abc.ABC):
    """Wraps one Light device/capability; subclass and implement."""

    COMPONENT_NAME = "Light"

    def __init__(self):
        super().__init__("Light", {})

    @abc.abstractmethod
    def on(self):
        """Perform the On action."""

    @abc.abstractmethod
    def off(self):
        """Perform the Off action."""
