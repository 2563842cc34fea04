# GENERATED — DO NOT EDIT.
# Produced by the design compiler; changes here are lost on the next
# `scclang compile`. Implement components by subclassing instead.

"""Deployment scaffold: one factory per component."""

import abc

from scclang.runtime import (ARRAY, BOOL_T, FLOAT_T, INSTANCE, INT_T, OPAQUE_T,
                             STR_T, ActionSpec, ComponentSpec, DesignInfo,
                             SourceSpec, deploy_all)

from . import datatypes

DESIGN = DesignInfo(components=(
    ComponentSpec(
        name="Camera", kind="entity",
        actions=(ActionSpec("TakePicture", "takePicture", ()),),
    ),
    ComponentSpec(
        name="Exploration", kind="entity",
        sources=(SourceSpec("twist", INSTANCE(datatypes.Twist), None),),
    ),
    ComponentSpec(
        name="LaserScan", kind="entity",
        sources=(SourceSpec("ranges", ARRAY(FLOAT_T), None),),
    ),
    ComponentSpec(
        name="Light", kind="entity",
        actions=(ActionSpec("On", "on", ()), ActionSpec("Off", "off", ()),),
    ),
    ComponentSpec(
        name="ModeSelector", kind="entity",
        sources=(SourceSpec("mode", INSTANCE(datatypes.Mode), None),),
    ),
    ComponentSpec(
        name="Wheel", kind="entity",
        actions=(ActionSpec("Roll", "roll", ("twist",)),),
    ),
    ComponentSpec(
        name="Motion", kind="context",
        output_check=INSTANCE(datatypes.Twist),
        push_inputs=(("context", "RandomMotion"), ("source", "Exploration", "twist"), ("source", "ModeSelector", "mode"),),
    ),
    ComponentSpec(
        name="ObstacleDetection", kind="context",
        output_check=INSTANCE(datatypes.Obstacle),
        push_inputs=(("source", "LaserScan", "ranges"),),
    ),
    ComponentSpec(
        name="ObstacleZone", kind="context",
        output_check=BOOL_T,
        push_inputs=(("context", "ObstacleDetection"),),
    ),
    ComponentSpec(
        name="RandomMotion", kind="context",
        output_check=INSTANCE(datatypes.Twist),
        push_inputs=(("context", "ObstacleDetection"),),
    ),
    ComponentSpec(
        name="MotionController", kind="controller",
        push_inputs=(("context", "Motion"),),
    ),
    ComponentSpec(
        name="ObstacleManager", kind="controller",
        push_inputs=(("context", "ObstacleZone"),),
    ),
))


class AbstractMainDeploy(abc.ABC):
    """Subclass, implement every factory, then call deployAll()."""

    @abc.abstractmethod
    def createCamera(self):
        """Return the Camera entity implementation."""

    @abc.abstractmethod
    def createExploration(self):
        """Return the Exploration entity implementation."""

    @abc.abstractmethod
    def createLaserScan(self):
        """Return the LaserScan entity implementation."""

    @abc.abstractmethod
    def createLight(self):
        """Return the Light entity implementation."""

    @abc.abstractmethod
    def createModeSelector(self):
        """Return the ModeSelector entity implementation."""

    @abc.abstractmethod
    def createWheel(self):
        """Return the Wheel entity implementation."""

    @abc.abstractmethod
    def createMotion(self):
        """Return the Motion context implementation."""

    @abc.abstractmethod
    def createObstacleDetection(self):
        """Return the ObstacleDetection context implementation."""

    @abc.abstractmethod
    def createObstacleZone(self):
        """Return the ObstacleZone context implementation."""

    @abc.abstractmethod
    def createRandomMotion(self):
        """Return the RandomMotion context implementation."""

    @abc.abstractmethod
    def createMotionController(self):
        """Return the MotionController controller implementation."""

    @abc.abstractmethod
    def createObstacleManager(self):
        """Return the ObstacleManager controller implementation."""

    def deployAll(self, *, clock=None, trace=None, mode="threaded",
                  queue_capacity=1024):
        """Instantiate, wire and start the whole design."""
        factories = {
            "Camera": self.createCamera,
            "Exploration": self.createExploration,
            "LaserScan": self.createLaserScan,
            "Light": self.createLight,
            "ModeSelector": self.createModeSelector,
            "Wheel": self.createWheel,
            "Motion": self.createMotion,
            "ObstacleDetection": self.createObstacleDetection,
            "ObstacleZone": self.createObstacleZone,
            "RandomMotion": self.createRandomMotion,
            "MotionController": self.createMotionController,
            "ObstacleManager": self.createObstacleManager,
        }
        return deploy_all(DESIGN, factories, clock=clock, trace=trace,
                          mode=mode, queue_capacity=queue_capacity)
