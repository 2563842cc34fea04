# GENERATED — DO NOT EDIT.
# Produced by the design compiler; changes here are lost on the next
# `scclang compile`. Implement components by subclassing instead.

"""Control operator MotionController."""

import abc

from scclang.runtime import ControllerBase


class _WheelActions:
    """Actions the design allows MotionController to invoke on Wheel entities."""

    def __init__(self, component):
        self._component = component

    def roll(self, twist):
        """Invoke Roll on every registered Wheel entity."""
        self._component._invoke_action("Wheel", "Roll", (twist,))

class _Actions:
    def __init__(self, component):
        self.wheel = _WheelActions(component)


class AbstractMotionController(ControllerBase, abc.ABC):
    """Turns context information into actuator orders; subclass and implement."""

    COMPONENT_NAME = "MotionController"

    _DISPATCH = {
        ("Motion", "Motion"): "_callOnMotion",
    }

    def __init__(self):
        super().__init__("MotionController")
        self._actions = _Actions(self)

    @abc.abstractmethod
    def onMotion(self, value, actions):
        """React to a Motion event (Twist)."""

    def _callOnMotion(self, event):
        self.onMotion(event.value, self._actions)
