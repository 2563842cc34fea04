"""WebSocket server for the browser operator console.

Serves static assets at ``/`` and the live protocol at ``/ws`` on the port
given to ``simulate --console``.  Outbound ``state`` messages carry the
tick, pose, mode, light, the known grid (run-length encoded rows), the
frontier cells and the picture count; they are pushed every second tick.
Inbound ``setMode`` messages are queued and applied at the next tick, so
the console reaches the bus only as ordinary ModeSelector events.

Run-length encoding: each row becomes segments of ``<count><letter>``
with letters U (unknown), F (known free) and O (known occupied); a
100x100 map fits a frame comfortably under 16 KiB.
"""

from __future__ import annotations

import asyncio
import json
import logging
import os
import threading
from typing import List, Optional, Set

import numpy as np

from .sim.generated.datatypes import Mode
from .sim.harness import Simulation
from .sim.kernels import frontier_kernel

log = logging.getLogger("scclang.console")

FALLBACK_PAGE = """<!doctype html>
<html><head><meta charset="utf-8"><title>operator console</title></head>
<body>
<p>Console assets are not built. Build the frontend (see frontend/README)
or set SCCLANG_CONSOLE_ASSETS to its dist directory. The WebSocket
endpoint at <code>/ws</code> is live regardless.</p>
</body></html>
"""

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".map": "application/json",
    ".json": "application/json",
}


def rle_encode_row(row: np.ndarray) -> str:
    """Encode one row of U/F/O codes (0/1/2) as count+letter segments."""
    letters = "UFO"
    out: List[str] = []
    run_val = int(row[0])
    run_len = 1
    for v in row[1:]:
        v = int(v)
        if v == run_val:
            run_len += 1
        else:
            out.append(f"{run_len}{letters[run_val]}")
            run_val = v
            run_len = 1
    out.append(f"{run_len}{letters[run_val]}")
    return "".join(out)


def encode_known_grid(occ: np.ndarray, known: np.ndarray) -> List[str]:
    codes = np.where(known == 0, 0, np.where(occ == 0, 1, 2)).astype(np.uint8)
    return [rle_encode_row(codes[r]) for r in range(codes.shape[0])]


def build_state_message(sim: Simulation) -> dict:
    world = sim.world
    mask = frontier_kernel(world.occ, world.known)
    rs, cs = np.nonzero(mask)
    return {
        "type": "state",
        "tick": sim.tick_index,
        "pose": {"x": world.x, "y": world.y, "theta": world.theta},
        "mode": sim.mode.value,
        "lightOn": world.light_on,
        "known": encode_known_grid(world.occ, world.known),
        "frontiers": [[int(r), int(c)] for r, c in zip(rs, cs)],
        "pictures": len(world.pictures),
    }


def find_assets_dir() -> Optional[str]:
    """Locate the built frontend: env override, then repo-layout search."""
    env = os.environ.get("SCCLANG_CONSOLE_ASSETS")
    if env:
        return env if os.path.isdir(env) else None
    probe = os.getcwd()
    for _ in range(6):
        candidate = os.path.join(probe, "frontend", "dist")
        if os.path.isfile(os.path.join(candidate, "index.html")):
            return candidate
        parent = os.path.dirname(probe)
        if parent == probe:
            break
        probe = parent
    return None


class ConsoleServer:
    """Bridges one Simulation to any number of console clients."""

    def __init__(self, sim: Simulation, port: int, every_n_ticks: int = 2,
                 host: str = "127.0.0.1"):
        self.sim = sim
        self.port = port
        self.bound_port = port
        self.host = host
        self.every_n_ticks = every_n_ticks
        self.assets_dir = find_assets_dir()
        self._loop: Optional[asyncio.AbstractEventLoop] = None
        self._clients: Set = set()
        self._thread: Optional[threading.Thread] = None
        self._started = threading.Event()
        self._stop: Optional[asyncio.Future] = None
        sim.add_tick_listener(self._on_tick)

    # -- simulation side (tick thread) ----------------------------------------

    def _on_tick(self, sim: Simulation) -> None:
        if sim.tick_index % self.every_n_ticks != 0:
            return
        if self._loop is None or not self._clients:
            return
        payload = json.dumps(build_state_message(sim), separators=(",", ":"))
        self._loop.call_soon_threadsafe(self._broadcast, payload)

    # -- server side (asyncio thread) --------------------------------------------

    def _broadcast(self, payload: str) -> None:
        # websockets' broadcast drops frames on slow clients instead of
        # stalling the loop.
        from websockets.asyncio.server import broadcast
        broadcast(self._clients, payload)

    async def _handler(self, connection) -> None:
        self._clients.add(connection)
        try:
            # A fresh client gets a frame immediately, not at the next tick.
            await connection.send(json.dumps(build_state_message(self.sim),
                                             separators=(",", ":")))
            async for raw in connection:
                self._handle_message(raw)
        except Exception:
            log.debug("console client dropped", exc_info=True)
        finally:
            self._clients.discard(connection)

    def _handle_message(self, raw) -> None:
        try:
            message = json.loads(raw)
        except (TypeError, ValueError):
            log.warning("console: discarding non-JSON frame")
            return
        if not isinstance(message, dict) or message.get("type") != "setMode":
            log.warning("console: discarding unknown message %r", message)
            return
        mode = message.get("mode")
        if mode not in ("RANDOM", "EXPLORATION"):
            log.warning("console: discarding bad mode %r", mode)
            return
        self.sim.request_mode(Mode[mode])

    def _process_request(self, connection, request):
        path = request.path.split("?", 1)[0]
        if path == "/ws":
            return None  # continue with the WebSocket handshake
        if path == "/":
            path = "/index.html"
        if self.assets_dir is not None:
            full = os.path.normpath(os.path.join(self.assets_dir,
                                                 path.lstrip("/")))
            if full.startswith(os.path.normpath(self.assets_dir)) \
                    and os.path.isfile(full):
                with open(full, "r", encoding="utf-8") as fh:
                    response = connection.respond(200, fh.read())
                ext = os.path.splitext(full)[1]
                if ext in _CONTENT_TYPES:
                    del response.headers["Content-Type"]
                    response.headers["Content-Type"] = _CONTENT_TYPES[ext]
                return response
            return connection.respond(404, "not found\n")
        if path == "/index.html":
            response = connection.respond(200, FALLBACK_PAGE)
            del response.headers["Content-Type"]
            response.headers["Content-Type"] = "text/html; charset=utf-8"
            return response
        return connection.respond(404, "not found\n")

    async def _serve(self) -> None:
        import websockets.asyncio.server as ws_server
        self._loop = asyncio.get_running_loop()
        self._stop = self._loop.create_future()
        async with ws_server.serve(self._handler, self.host, self.port,
                                   process_request=self._process_request
                                   ) as server:
            if server.sockets:
                self.bound_port = server.sockets[0].getsockname()[1]
            self._started.set()
            await self._stop

    def _run(self) -> None:
        try:
            asyncio.run(self._serve())
        except Exception:
            log.exception("console server failed")
            self._started.set()

    # -- lifecycle ------------------------------------------------------------------

    def start(self) -> None:
        self._thread = threading.Thread(target=self._run,
                                        name="scclang-console", daemon=True)
        self._thread.start()
        if not self._started.wait(timeout=10):
            raise RuntimeError("console server did not start")

    def stop(self) -> None:
        if self._loop is not None and self._stop is not None:
            def _finish():
                if not self._stop.done():
                    self._stop.set_result(None)
            self._loop.call_soon_threadsafe(_finish)
        if self._thread is not None:
            self._thread.join(timeout=5)
