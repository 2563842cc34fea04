# GENERATED — DO NOT EDIT.
# Produced by the design compiler; changes here are lost on the next
# `scclang compile`. Implement components by subclassing instead.

"""Context operator Motion (output Twist)."""

import abc

from scclang.runtime import ContextBase, DiscoveryProxy


class AbstractMotion(ContextBase, abc.ABC):
    """Refines its inputs into Twist values; subclass and implement."""

    COMPONENT_NAME = "Motion"

    _DISPATCH = {
        ("RandomMotion", "RandomMotion"): "_callOnRandomMotion",
        ("Exploration", "twist"): "_callOnTwist",
        ("ModeSelector", "mode"): "_callOnMode",
    }

    def __init__(self):
        super().__init__("Motion")
        self.discoverExplorationForSubscribe = DiscoveryProxy(
            self, "Exploration", {"twist": "subscribeTwist"})
        self.discoverModeSelectorForSubscribe = DiscoveryProxy(
            self, "ModeSelector", {"mode": "subscribeMode"})

    @abc.abstractmethod
    def onRandomMotion(self, value, pulls):
        """React to a RandomMotion event (Twist)."""

    def _callOnRandomMotion(self, event):
        self.onRandomMotion(event.value, self._pulls)

    @abc.abstractmethod
    def onTwist(self, value, pulls):
        """React to a Exploration.twist event (Twist)."""

    def _callOnTwist(self, event):
        self.onTwist(event.value, self._pulls)

    @abc.abstractmethod
    def onMode(self, value, pulls):
        """React to a ModeSelector.mode event (Mode)."""

    def _callOnMode(self, event):
        self.onMode(event.value, self._pulls)

    def publishMotion(self, value):
        """Publish the Motion output (Twist)."""
        self._publish_output(value)
