# GENERATED — DO NOT EDIT.
# Produced by the design compiler; changes here are lost on the next
# `scclang compile`. Implement components by subclassing instead.

"""Control operator ObstacleManager."""

import abc

from scclang.runtime import ControllerBase


class _CameraActions:
    """Actions the design allows ObstacleManager to invoke on Camera entities."""

    def __init__(self, component):
        self._component = component

    def takePicture(self):
        """Invoke TakePicture on every registered Camera entity."""
        self._component._invoke_action("Camera", "TakePicture", ())

class _LightActions:
    """Actions the design allows ObstacleManager to invoke on Light entities."""

    def __init__(self, component):
        self._component = component

    def on(self):
        """Invoke On on every registered Light entity."""
        self._component._invoke_action("Light", "On", ())

    def off(self):
        """Invoke Off on every registered Light entity."""
        self._component._invoke_action("Light", "Off", ())

class _Actions:
    def __init__(self, component):
        self.camera = _CameraActions(component)
        self.light = _LightActions(component)


class AbstractObstacleManager(ControllerBase, abc.ABC):
    """Turns context information into actuator orders; subclass and implement."""

    COMPONENT_NAME = "ObstacleManager"

    _DISPATCH = {
        ("ObstacleZone", "ObstacleZone"): "_callOnObstacleZone",
    }

    def __init__(self):
        super().__init__("ObstacleManager")
        self._actions = _Actions(self)

    @abc.abstractmethod
    def onObstacleZone(self, value, actions):
        """React to a ObstacleZone event (Boolean)."""

    def _callOnObstacleZone(self, event):
        self.onObstacleZone(event.value, self._actions)
