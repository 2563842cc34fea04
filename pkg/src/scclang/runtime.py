"""Event bus, component registry and discovery service.

The generated framework links against this module.  A deployed design is a
:class:`RunningSystem`: entity instances register with attribute values and
publish on their declared sources; context operators consume events, refine
them and publish their single output; controllers consume context outputs
and invoke entity actions.  The bus enforces the layering at runtime as a
second line of defense behind the generator: controllers cannot publish,
entities cannot subscribe.

Delivery model
    Push delivery is asynchronous: every published event is queued once per
    subscriber and callbacks run later, one at a time per component (a
    component's callbacks are mutually exclusive and observe FIFO order per
    producer/channel pair).  Pull requests are synchronous.  Two scheduling
    modes exist:

    * ``threaded`` (default): a single dispatcher thread drains the queue;
      producers may publish from any thread.
    * ``manual``: nothing runs until :meth:`RunningSystem.settle` pumps the
      queue on the calling thread.  This gives bit-reproducible schedules
      and is what the simulator uses.

    Per-component inboxes are bounded (default 1024); a producer that would
    overflow an inbox blocks until the dispatcher catches up, except while
    already inside a callback (cascades cannot deadlock; the context graph
    is acyclic by construction).

Ordering at deployment
    ``deploy_all`` instantiates every component, wires the static
    context-to-context and context-to-controller subscriptions, then calls
    ``postInitialize`` on operators first and entities last, so that entity
    sources published at startup reach live queries created in operator
    ``postInitialize`` hooks.
"""

from __future__ import annotations

import itertools
import json
import logging
import threading
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

log = logging.getLogger("scclang.runtime")


# -- clocks -------------------------------------------------------------------

class WallClock:
    def now_ms(self) -> int:
        return int(time.time() * 1000)


class ManualClock:
    """Injectable clock for simulations and tests."""

    def __init__(self, start_ms: int = 0):
        self._now = int(start_ms)

    def now_ms(self) -> int:
        return self._now

    def advance_ms(self, delta: int) -> None:
        self._now += int(delta)


# -- runtime type checks --------------------------------------------------------

class TypeCheck:
    """Declared-type guard applied to published values."""

    def __init__(self, name: str, fn: Callable[[Any], bool]):
        self.name = name
        self._fn = fn

    def ok(self, value: Any) -> bool:
        return self._fn(value)

    def __repr__(self):
        return f"TypeCheck({self.name})"


BOOL_T = TypeCheck("Boolean", lambda v: isinstance(v, (bool, np.bool_)))
INT_T = TypeCheck("Integer", lambda v: isinstance(v, (int, np.integer))
                  and not isinstance(v, bool))
FLOAT_T = TypeCheck("Float", lambda v: isinstance(v, (float, int, np.floating,
                                                      np.integer))
                    and not isinstance(v, bool))
STR_T = TypeCheck("String", lambda v: isinstance(v, str))
OPAQUE_T = TypeCheck("<imported>", lambda v: True)


def ARRAY(element: TypeCheck) -> TypeCheck:
    def ok(value: Any) -> bool:
        if isinstance(value, np.ndarray):
            if element is FLOAT_T:
                return value.dtype.kind in "fiu"
            if element is INT_T:
                return value.dtype.kind in "iu"
            if element is BOOL_T:
                return value.dtype.kind == "b"
            return all(element.ok(v) for v in value)
        if isinstance(value, (list, tuple)):
            return all(element.ok(v) for v in value)
        return False
    return TypeCheck(f"{element.name}[]", ok)


def INSTANCE(cls: type) -> TypeCheck:
    return TypeCheck(cls.__name__, lambda v: isinstance(v, cls))


# -- design metadata (embedded by the generator) ----------------------------------

@dataclass(frozen=True)
class SourceSpec:
    name: str
    check: TypeCheck
    provider_attr: Optional[str] = None  # set when some consumer pulls it


@dataclass(frozen=True)
class ActionSpec:
    name: str
    handler_attr: str
    params: Tuple[str, ...] = ()


# Channel references: ("source", entity_class, source) | ("context", name)
ChannelRef = Tuple[str, ...]


@dataclass(frozen=True)
class ComponentSpec:
    name: str
    kind: str  # "entity" | "context" | "controller"
    sources: Tuple[SourceSpec, ...] = ()
    actions: Tuple[ActionSpec, ...] = ()
    attributes: Tuple[str, ...] = ()
    output_check: Optional[TypeCheck] = None
    push_inputs: Tuple[ChannelRef, ...] = ()
    pull_inputs: Tuple[ChannelRef, ...] = ()

    def source(self, name: str) -> Optional[SourceSpec]:
        return next((s for s in self.sources if s.name == name), None)

    def action(self, name: str) -> Optional[ActionSpec]:
        return next((a for a in self.actions if a.name == name), None)


@dataclass(frozen=True)
class DesignInfo:
    components: Tuple[ComponentSpec, ...]

    def component(self, name: str) -> Optional[ComponentSpec]:
        return next((c for c in self.components if c.name == name), None)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(c.name for c in self.components)


# -- identities and events ----------------------------------------------------------

@dataclass(frozen=True)
class ComponentId:
    name: str
    instance_seq: int

    def __str__(self) -> str:
        return f"{self.name}#{self.instance_seq}"


@dataclass(frozen=True)
class Event:
    producer: ComponentId
    channel: str
    value: Any
    seq: int
    timestamp_ms: int


class DeploymentError(Exception):
    pass


class PublishError(Exception):
    pass


# -- component base classes (generated classes extend these) -------------------------

class _EmptyPulls:
    """Placeholder passed to callbacks of components without pull inputs."""


EMPTY_PULLS = _EmptyPulls()


class ComponentBase:
    KIND = "component"

    def __init__(self, name: str):
        self._component_name = name
        self._system: Optional["RunningSystem"] = None
        self._cid: Optional[ComponentId] = None
        self._serial_lock = threading.Lock()
        self._in_callback = False

    @property
    def component_name(self) -> str:
        return self._component_name

    @property
    def component_id(self) -> Optional[ComponentId]:
        return self._cid

    def postInitialize(self):
        """Hook invoked once after deployment wiring; override as needed."""

    def _bound(self) -> "RunningSystem":
        if self._system is None:
            raise PublishError(
                f"component {self._component_name!r} is not registered "
                "with a running system")
        return self._system


class EntityBase(ComponentBase):
    KIND = "entity"

    def __init__(self, name: str, attributes: Dict[str, Any]):
        super().__init__(name)
        self._attributes = dict(attributes)

    @property
    def attributes(self) -> Dict[str, Any]:
        return dict(self._attributes)

    def _publish(self, channel: str, value: Any) -> None:
        self._bound().publish(self._cid, channel, value)


class _OperatorBase(ComponentBase):
    _DISPATCH: Dict[Tuple[str, str], str] = {}

    def _deliver(self, event: Event) -> None:
        attr = self._DISPATCH.get((event.producer.name, event.channel))
        if attr is None:
            log.warning("%s: no callback for %s.%s", self._component_name,
                        event.producer.name, event.channel)
            return
        getattr(self, attr)(event)


class ContextBase(_OperatorBase):
    KIND = "context"

    def __init__(self, name: str):
        super().__init__(name)
        self._pulls: Any = EMPTY_PULLS

    def _publish_output(self, value: Any) -> None:
        self._bound().publish(self._cid, self._component_name, value)

    def _request(self, entity_class: str, source: str) -> List[Any]:
        return self._bound().request(self._cid, entity_class, source)

    def _request_context(self, context_name: str) -> Any:
        return self._bound().last_output(self._cid, context_name)


class ControllerBase(_OperatorBase):
    KIND = "controller"

    def _invoke_action(self, entity_class: str, action: str,
                       args: Tuple[Any, ...]) -> None:
        self._bound().invoke_action(self._cid, entity_class, action, args)


# -- discovery -------------------------------------------------------------------

class DiscoveryProxy:
    """``discover<EntityClass>ForSubscribe`` handle held by a context.

    ``all()`` selects every instance of the class; ``where(attr=value)``
    narrows by attribute equality (conjunctive).  The resulting selection
    exposes one ``subscribe<Source>()`` method per source of that class the
    owning component consumes in the design, and nothing else.
    """

    def __init__(self, component: ComponentBase, entity_class: str,
                 subscribables: Dict[str, str]):
        self._component = component
        self._entity_class = entity_class
        self._subscribables = dict(subscribables)  # source -> method label

    def all(self) -> "DiscoverySelection":
        return DiscoverySelection(self._component, self._entity_class, {},
                                  self._subscribables)

    def where(self, **filters: Any) -> "DiscoverySelection":
        return DiscoverySelection(self._component, self._entity_class,
                                  dict(filters), self._subscribables)


class DiscoverySelection:
    def __init__(self, component: ComponentBase, entity_class: str,
                 filters: Dict[str, Any], subscribables: Dict[str, str]):
        self._component = component
        self._entity_class = entity_class
        self._filters = filters
        self._subscribables = subscribables

    def __getattr__(self, name: str):
        for source, label in self._subscribables.items():
            if name == label:
                def _subscribe(_source=source):
                    system = self._component._bound()
                    system.add_live_query(self._component, self._entity_class,
                                          self._filters, _source)
                return _subscribe
        raise AttributeError(
            f"{self._entity_class} selection offers only "
            f"{sorted(self._subscribables.values())}, not {name!r}")


@dataclass
class _LiveQuery:
    consumer: ComponentBase
    entity_class: str
    filters: Dict[str, Any]
    source: str

    def matches(self, attributes: Dict[str, Any]) -> bool:
        return all(attributes.get(k) == v for k, v in self.filters.items())


# -- queue entries -----------------------------------------------------------------

@dataclass
class _Delivery:
    consumer: ComponentBase
    event: Event


@dataclass
class _ActionCall:
    target: ComponentBase
    target_cid: ComponentId
    handler_attr: str
    args: Tuple[Any, ...]


class RunningSystem:
    """A deployed design: registry, bus and discovery in one handle."""

    def __init__(self, design: DesignInfo, *, clock=None,
                 trace: Optional[Callable[[dict], None]] = None,
                 mode: str = "threaded", queue_capacity: int = 1024):
        if mode not in ("threaded", "manual"):
            raise ValueError(f"unknown mode {mode!r}")
        self.design = design
        self.clock = clock or WallClock()
        self.mode = mode
        self.queue_capacity = queue_capacity
        self._trace = trace

        self._lock = threading.Lock()
        self._work = threading.Condition(self._lock)
        self._queue: deque = deque()
        self._pending = 0
        self._inbox_count: Dict[int, int] = {}  # id(instance) -> queued items

        self._instances: Dict[ComponentId, ComponentBase] = {}
        self._alive: Dict[ComponentId, bool] = {}
        self._entities: Dict[str, List[ComponentId]] = {}  # class -> ordered ids
        self._seq_per_name: Dict[str, itertools.count] = {}
        self._event_seq: Dict[Tuple[ComponentId, str], int] = {}
        self._static_subs: Dict[str, List[ComponentBase]] = {}  # context name -> consumers
        self._live_queries: List[_LiveQuery] = []
        self._subscriptions: Dict[Tuple[ComponentId, str], List[ComponentBase]] = {}
        self._last_output: Dict[str, Any] = {}

        self._shutdown = False
        self._tl = threading.local()
        self.reentry_violations = 0
        self.events_published = 0
        self.events_delivered = 0

        self._dispatcher: Optional[threading.Thread] = None
        if mode == "threaded":
            self._dispatcher = threading.Thread(
                target=self._dispatch_loop, name="scclang-dispatcher", daemon=True)
            self._dispatcher.start()

    # -- registration ---------------------------------------------------------

    def _next_cid(self, name: str) -> ComponentId:
        counter = self._seq_per_name.setdefault(name, itertools.count(1))
        return ComponentId(name, next(counter))

    def register_entity(self, instance: EntityBase) -> ComponentId:
        """Make an entity visible to discovery and eligible to publish.

        Live queries matching its class and attributes gain a subscription
        immediately.
        """
        if not isinstance(instance, EntityBase):
            raise DeploymentError(
                f"{type(instance).__name__} is not an entity implementation")
        spec = self.design.component(instance.component_name)
        if spec is None or spec.kind != "entity":
            raise DeploymentError(
                f"no entity class {instance.component_name!r} in the "
                "deployed design")
        missing = [a for a in spec.attributes if a not in instance._attributes]
        if missing:
            raise DeploymentError(
                f"entity {instance.component_name!r} registration is missing "
                f"attribute values: {', '.join(sorted(missing))}")
        with self._lock:
            if self._shutdown:
                raise DeploymentError("system is shut down")
            cid = self._next_cid(instance.component_name)
            instance._system = self
            instance._cid = cid
            self._instances[cid] = instance
            self._alive[cid] = True
            self._entities.setdefault(instance.component_name, []).append(cid)
            for query in self._live_queries:
                if (query.entity_class == instance.component_name
                        and query.matches(instance._attributes)):
                    self._subscriptions.setdefault(
                        (cid, query.source), []).append(query.consumer)
        return cid

    def unregister_entity(self, cid: ComponentId) -> None:
        """Drop an entity: no event from it is delivered after this returns."""
        with self._lock:
            if cid not in self._instances or not self._alive.get(cid, False):
                log.warning("unregister of unknown component id %s ignored", cid)
                return
            instance = self._instances[cid]
            if not isinstance(instance, EntityBase):
                log.warning("unregister of non-entity %s ignored", cid)
                return
            self._alive[cid] = False
            self._entities[instance.component_name].remove(cid)
            for key in [k for k in self._subscriptions if k[0] == cid]:
                del self._subscriptions[key]

    def _register_operator(self, instance: ComponentBase) -> ComponentId:
        with self._lock:
            cid = self._next_cid(instance.component_name)
            instance._system = self
            instance._cid = cid
            self._instances[cid] = instance
            self._alive[cid] = True
        return cid

    # -- subscription management -----------------------------------------------

    def add_live_query(self, consumer: ComponentBase, entity_class: str,
                       filters: Dict[str, Any], source: str) -> None:
        spec = self.design.component(entity_class)
        if spec is None or spec.kind != "entity":
            raise DeploymentError(f"no entity class {entity_class!r} in design")
        for attr in filters:
            if attr not in spec.attributes:
                raise DeploymentError(
                    f"entity class {entity_class!r} declares no attribute "
                    f"{attr!r}")
        with self._lock:
            query = _LiveQuery(consumer, entity_class, dict(filters), source)
            self._live_queries.append(query)
            for cid in self._entities.get(entity_class, ()):
                instance = self._instances[cid]
                if query.matches(instance._attributes):
                    self._subscriptions.setdefault(
                        (cid, source), []).append(consumer)

    def subscription_pairs(self) -> List[Tuple[str, str, str]]:
        """Snapshot of live subscriptions as (consumer, producer_id, source)."""
        with self._lock:
            return sorted(
                (consumer.component_name, str(cid), source)
                for (cid, source), consumers in self._subscriptions.items()
                for consumer in consumers)

    # -- publishing ----------------------------------------------------------------

    def publish(self, producer_cid: ComponentId, channel: str, value: Any) -> None:
        """Queue one event for every component subscribed right now.

        Exactly-once per subscriber, FIFO per (producer, channel).  The
        producer blocks when a subscriber inbox is full, unless called from
        inside a callback.
        """
        if producer_cid is None:
            raise PublishError("producer is not registered")
        producer = self._instances.get(producer_cid)
        if producer is None:
            raise PublishError(f"unknown producer {producer_cid}")
        spec = self.design.component(producer_cid.name)
        if producer.KIND == "controller":
            raise PublishError(
                f"controller {producer_cid.name!r} may not publish events "
                "(controllers only invoke actions)")
        if producer.KIND == "entity":
            source = spec.source(channel) if spec else None
            if source is None:
                raise PublishError(
                    f"entity class {producer_cid.name!r} declares no source "
                    f"{channel!r}")
            check = source.check
        else:  # context
            if channel != producer_cid.name:
                raise PublishError(
                    f"context {producer_cid.name!r} may only publish its own "
                    f"output channel, not {channel!r}")
            check = spec.output_check if spec else None
        if check is not None and not check.ok(value):
            raise PublishError(
                f"value of type {type(value).__name__} does not match the "
                f"declared type {check.name} of channel "
                f"{producer_cid.name}.{channel}")

        with self._lock:
            if self._shutdown:
                raise PublishError("system is shut down")
            if not self._alive.get(producer_cid, False):
                raise PublishError(f"producer {producer_cid} is not registered")
            key = (producer_cid, channel)
            seq = self._event_seq.get(key, 0) + 1
            self._event_seq[key] = seq
            event = Event(producer_cid, channel, value, seq,
                          self.clock.now_ms())
            if producer.KIND == "context":
                self._last_output[producer_cid.name] = value
            if self._trace is not None:
                self._trace({"ts": event.timestamp_ms,
                             "producer": str(producer_cid),
                             "channel": channel, "seq": seq})
            self.events_published += 1
            if producer.KIND == "context":
                consumers = list(self._static_subs.get(producer_cid.name, ()))
            else:
                consumers = list(self._subscriptions.get(key, ()))
            for consumer in consumers:
                self._enqueue_locked(_Delivery(consumer, event))

    def invoke_action(self, controller_cid: ComponentId, entity_class: str,
                      action: str, args: Tuple[Any, ...]) -> None:
        """Queue an action invocation on every registered instance of a class."""
        spec = self.design.component(entity_class)
        if spec is None or spec.kind != "entity":
            raise PublishError(f"no entity class {entity_class!r} in design")
        action_spec = spec.action(action)
        if action_spec is None:
            raise PublishError(
                f"entity class {entity_class!r} declares no action {action!r}")
        with self._lock:
            if self._shutdown:
                raise PublishError("system is shut down")
            for cid in list(self._entities.get(entity_class, ())):
                self._enqueue_locked(_ActionCall(
                    self._instances[cid], cid, action_spec.handler_attr, args))

    def _enqueue_locked(self, item) -> None:
        consumer = item.consumer if isinstance(item, _Delivery) else item.target
        key = id(consumer)
        in_callback = getattr(self._tl, "in_dispatch", False)
        while (self._inbox_count.get(key, 0) >= self.queue_capacity
               and not in_callback and not self._shutdown):
            if self.mode == "manual":
                self._pump_one_locked()
            else:
                self._work.wait(timeout=0.5)
        self._inbox_count[key] = self._inbox_count.get(key, 0) + 1
        self._queue.append(item)
        self._pending += 1
        self._work.notify_all()

    # -- pull ------------------------------------------------------------------------

    def request(self, consumer_cid: ComponentId, entity_class: str,
                source: str) -> List[Any]:
        """Synchronously collect the current value from each matching provider.

        Returns one value per reachable provider, in registration order; a
        failing provider is skipped and logged.
        """
        consumer_spec = self.design.component(consumer_cid.name)
        if consumer_spec is None or ("source", entity_class, source) not in \
                consumer_spec.pull_inputs:
            raise PublishError(
                f"design declares no pull binding from {consumer_cid.name!r} "
                f"to {entity_class}.{source}")
        spec = self.design.component(entity_class)
        source_spec = spec.source(source) if spec else None
        provider_attr = source_spec.provider_attr if source_spec else None
        if provider_attr is None:
            raise PublishError(f"source {entity_class}.{source} has no provider")
        with self._lock:
            cids = list(self._entities.get(entity_class, ()))
            instances = [self._instances[c] for c in cids if self._alive.get(c)]
        values = []
        for instance in instances:
            try:
                values.append(self._execute(
                    instance, getattr(instance, provider_attr)))
            except Exception:
                log.exception("pull provider %s.%s failed; skipping instance",
                              entity_class, source)
        return values

    def last_output(self, consumer_cid: ComponentId, context_name: str) -> Any:
        consumer_spec = self.design.component(consumer_cid.name)
        if consumer_spec is None or ("context", context_name) not in \
                consumer_spec.pull_inputs:
            raise PublishError(
                f"design declares no pull binding from {consumer_cid.name!r} "
                f"to context {context_name!r}")
        with self._lock:
            return self._last_output.get(context_name)

    # -- dispatch ---------------------------------------------------------------------

    def _execute(self, component: ComponentBase, fn: Callable, *args):
        with component._serial_lock:
            if component._in_callback:
                self.reentry_violations += 1
            component._in_callback = True
            prev = getattr(self._tl, "in_dispatch", False)
            self._tl.in_dispatch = True
            try:
                return fn(*args)
            finally:
                self._tl.in_dispatch = prev
                component._in_callback = False

    def _run_item(self, item) -> None:
        try:
            if isinstance(item, _Delivery):
                if self._alive.get(item.event.producer, False):
                    self._execute(item.consumer, item.consumer._deliver,
                                  item.event)
                    self.events_delivered += 1
            else:
                if self._alive.get(item.target_cid, False):
                    self._execute(item.target,
                                  getattr(item.target, item.handler_attr),
                                  *item.args)
        except Exception:
            log.exception("callback failed in %s",
                          item.consumer.component_name
                          if isinstance(item, _Delivery)
                          else item.target.component_name)

    def _finish_item_locked(self, item) -> None:
        consumer = item.consumer if isinstance(item, _Delivery) else item.target
        key = id(consumer)
        self._inbox_count[key] = max(0, self._inbox_count.get(key, 0) - 1)
        self._pending = max(0, self._pending - 1)
        self._work.notify_all()

    def _pump_one_locked(self) -> bool:
        if not self._queue:
            return False
        item = self._queue.popleft()
        self._lock.release()
        try:
            self._run_item(item)
        finally:
            self._lock.acquire()
        self._finish_item_locked(item)
        return True

    def _dispatch_loop(self) -> None:
        while True:
            with self._lock:
                while not self._queue and not self._shutdown:
                    self._work.wait()
                if self._shutdown and not self._queue:
                    return
                item = self._queue.popleft()
            self._run_item(item)
            with self._lock:
                self._finish_item_locked(item)

    # -- lifecycle ---------------------------------------------------------------------

    def settle(self, timeout: Optional[float] = None) -> bool:
        """Block until every queued event and action has been processed."""
        if self.mode == "manual":
            if getattr(self._tl, "in_dispatch", False):
                raise RuntimeError("settle() may not be called from a callback")
            with self._lock:
                while self._pump_one_locked():
                    pass
            return True
        deadline = None if timeout is None else time.monotonic() + timeout
        with self._lock:
            while self._pending > 0:
                remaining = None
                if deadline is not None:
                    remaining = deadline - time.monotonic()
                    if remaining <= 0:
                        return False
                self._work.wait(timeout=remaining)
            return True

    def shutdown(self) -> None:
        """Stop dispatching; nothing is delivered after this returns."""
        with self._lock:
            if self._shutdown:
                return
            self._shutdown = True
            self._queue.clear()
            self._pending = 0
            self._inbox_count.clear()
            for cid in self._alive:
                self._alive[cid] = False
            self._work.notify_all()
        if self._dispatcher is not None:
            self._dispatcher.join(timeout=5)

    # -- introspection -------------------------------------------------------------------

    def component(self, name: str) -> ComponentBase:
        """The singleton instance for an operator, or first entity instance."""
        with self._lock:
            for cid, instance in self._instances.items():
                if cid.name == name and self._alive.get(cid):
                    return instance
        raise KeyError(name)

    def entity_ids(self, entity_class: str) -> List[ComponentId]:
        with self._lock:
            return list(self._entities.get(entity_class, ()))

    @property
    def live_component_count(self) -> int:
        with self._lock:
            return sum(1 for alive in self._alive.values() if alive)


def deploy_all(design: DesignInfo, factories: Dict[str, Callable[[], ComponentBase]],
               *, clock=None, trace: Optional[Callable[[dict], None]] = None,
               mode: str = "threaded", queue_capacity: int = 1024) -> RunningSystem:
    """Instantiate one component per factory, wire the design, start it.

    A missing factory refuses the whole deployment before any component is
    created.  Static subscriptions (context to context, context to
    controller) come from the design; entity-source subscriptions are made
    by the components themselves through discovery in ``postInitialize``.
    """
    missing = [c.name for c in design.components if c.name not in factories]
    if missing:
        raise DeploymentError(
            "deployment refused, missing factories for: " + ", ".join(missing))
    extra = [name for name in factories if design.component(name) is None]
    if extra:
        raise DeploymentError(
            "deployment refused, factories for unknown components: "
            + ", ".join(sorted(extra)))

    system = RunningSystem(design, clock=clock, trace=trace, mode=mode,
                           queue_capacity=queue_capacity)
    instances: Dict[str, ComponentBase] = {}
    try:
        for comp in design.components:
            instance = factories[comp.name]()
            if not isinstance(instance, ComponentBase) \
                    or instance.component_name != comp.name:
                raise DeploymentError(
                    f"factory for {comp.name!r} returned "
                    f"{type(instance).__name__}, not an implementation of it")
            if comp.kind != instance.KIND:
                raise DeploymentError(
                    f"component {comp.name!r} is a {comp.kind}, factory "
                    f"returned a {instance.KIND}")
            instances[comp.name] = instance
        for comp in design.components:
            instance = instances[comp.name]
            if comp.kind == "entity":
                system.register_entity(instance)
            else:
                system._register_operator(instance)
        # Static wiring: context outputs to their declared consumers.
        for comp in design.components:
            if comp.kind == "entity":
                continue
            for ref in comp.push_inputs:
                if ref[0] == "context":
                    system._static_subs.setdefault(ref[1], []).append(
                        instances[comp.name])
        # Operators first so their live queries exist before entities speak.
        for comp in design.components:
            if comp.kind != "entity":
                instances[comp.name].postInitialize()
        for comp in design.components:
            if comp.kind == "entity":
                instances[comp.name].postInitialize()
    except Exception:
        system.shutdown()
        raise
    return system


def jsonl_trace_writer(stream) -> Callable[[dict], None]:
    """Trace sink writing one JSON object per line, stable key order."""
    def write(record: dict) -> None:
        stream.write(json.dumps(record, separators=(",", ":"),
                                sort_keys=True) + "\n")
    return write
