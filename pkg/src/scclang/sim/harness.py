"""Tick loop driving the deployed case study over a world.

One tick: the laser scans and publishes, the exploration entity publishes
its twist, queued console mode changes are injected, the bus settles (all
cascades through contexts, controllers and actions complete), and the
world integrates the wheel's last ordered twist.  The bus runs in manual
mode on the tick thread and the clock is simulated, so a fixed seed and
map give a bit-identical trajectory and event trace.
"""

from __future__ import annotations

import math
import queue
from typing import Callable, List, Optional

from ..runtime import ManualClock, RunningSystem
from .components import SimMainDeploy, twist_to_pair
from .generated.datatypes import Mode
from .kernels import warmup
from .world import SimConfig, World


class Simulation:
    def __init__(self, world: World, cfg: Optional[SimConfig] = None, *,
                 seed: int = 0, initial_mode: Mode = Mode.RANDOM,
                 trace: Optional[Callable[[dict], None]] = None):
        self.cfg = cfg or SimConfig()
        self.world = world
        self.clock = ManualClock(0)
        self.tick_index = 0
        self._mode_requests: "queue.Queue[Mode]" = queue.Queue()
        self._tick_listeners: List[Callable[["Simulation"], None]] = []
        warmup()
        self.deploy = SimMainDeploy(world, self.cfg, seed, initial_mode,
                                    self.clock)
        self.system: RunningSystem = self.deploy.deployAll(
            clock=self.clock, trace=trace, mode="manual")
        self.system.settle()  # deliver startup publications (initial mode)

    @classmethod
    def from_map_file(cls, map_path: str, cfg: Optional[SimConfig] = None,
                      **kwargs) -> "Simulation":
        cfg = cfg or SimConfig()
        return cls(World.from_map_file(map_path, cfg.cell_size), cfg, **kwargs)

    # -- operator interface ---------------------------------------------------

    def request_mode(self, mode: Mode) -> None:
        """Thread-safe mode change; applied at the start of the next tick."""
        self._mode_requests.put(mode)

    def set_mode(self, mode: Mode) -> None:
        """Immediate mode change from the tick thread (tests, CLI)."""
        self.deploy.mode_selector.set_mode(mode)
        self.system.settle()

    def add_tick_listener(self,
                          listener: Callable[["Simulation"], None]) -> None:
        self._tick_listeners.append(listener)

    @property
    def mode(self) -> Mode:
        return self.deploy.mode_selector.mode

    @property
    def exploration_complete(self) -> bool:
        return self.deploy.exploration.complete

    # -- stepping ----------------------------------------------------------------

    def tick(self) -> None:
        while True:
            try:
                mode = self._mode_requests.get_nowait()
            except queue.Empty:
                break
            self.deploy.mode_selector.set_mode(mode)
        self.deploy.laser.tick()
        self.deploy.exploration.tick()
        self.system.settle()
        vx, wz = twist_to_pair(self.deploy.wheel.command)
        self.world.step(vx, wz, self.cfg.dt, self.cfg.cell_size)
        self.tick_index += 1
        self.clock.advance_ms(int(round(self.cfg.dt * 1000)))
        for listener in self._tick_listeners:
            listener(self)

    def run(self, steps: int) -> None:
        for _ in range(steps):
            self.tick()

    def run_until_explored(self, max_steps: int) -> int:
        """Tick until the exploration entity reports completion."""
        for step in range(max_steps):
            if self.exploration_complete:
                return step
            self.tick()
        return max_steps

    def shutdown(self) -> None:
        self.system.shutdown()
