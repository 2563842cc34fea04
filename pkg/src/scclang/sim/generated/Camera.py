# GENERATED — DO NOT EDIT.
# Produced by the design compiler; changes here are lost on the next
# `scclang compile`. Implement components by subclassing instead.

"""Entity class Camera."""

import abc

from scclang.runtime import EntityBase


class AbstractCamera(EntityBase, abc.ABC):
    """Wraps one Camera device/capability; subclass and implement."""

    COMPONENT_NAME = "Camera"

    def __init__(self):
        super().__init__("Camera", {})

    @abc.abstractmethod
    def takePicture(self):
        """Perform the TakePicture action."""
