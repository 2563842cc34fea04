"""2D occupancy-grid robot simulator implementing the bundled case study."""

from .harness import Simulation
from .world import SimConfig, World

__all__ = ["Simulation", "SimConfig", "World"]
