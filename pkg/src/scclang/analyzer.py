"""Semantic checks for parsed specifications.

Resolves type references, validates the Sense/Compute/Control layering and
builds the component graph.  The layering admits exactly four edge shapes:

    entity-source -> context        (sensing)
    context       -> context        (refinement, acyclic)
    context       -> controller     (decision input)
    controller    -> entity-action  (actuation)

Violations carry one of eight rule ids:

    R1  controllers consume only context outputs and invoke only declared
        entity actions
    R2  contexts consume only entity sources and context outputs
    R3  entities consume nothing and must provide something (at least one
        source or action)
    R4  the context dependency graph is acyclic
    R5  every referenced type name is declared or imported
    R6  names are unique per namespace (top-level and within declarations)
    R7  for `source s from E`, entity class E declares source s
    R8  for `action A on E`, entity class E declares action A

All violations are reported in one pass, ordered by source span.  Pull
bindings participate in layering and acyclicity exactly like push ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from .model import (
    ArrayOf, ContextInput, ContextOperator, ControlOperator, DataType,
    EntityClass, Enumeration, Imported, NamedRef, Primitive, SourceInput,
    SourceSpan, Specification, Structure, type_name,
)
from .parser import ParseDiagnostic, Severity

RULE_IDS = ("R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8")


@dataclass(frozen=True)
class RuleViolation:
    rule_id: str
    span: SourceSpan
    message: str

    def __str__(self) -> str:
        return f"{self.span}: error[{self.rule_id}]: {self.message}"


# Graph nodes: ("source", entity, source) | ("context", name)
#            | ("controller", name) | ("action", entity, action)
Node = Tuple[str, ...]


@dataclass(frozen=True)
class CheckedSpec:
    """A specification with resolved types and a validated component graph."""

    spec: Specification
    resolved_types: Dict[Tuple, DataType]
    nodes: Tuple[Node, ...]
    edges: Tuple[Tuple[Node, Node], ...]
    warnings: Tuple[ParseDiagnostic, ...] = ()

    def output_type(self, context_name: str) -> DataType:
        return self.resolved_types[("context", context_name, "output")]

    def source_type(self, entity: str, source: str) -> DataType:
        return self.resolved_types[("entity", entity, "source", source)]

    @property
    def component_names(self) -> Tuple[str, ...]:
        spec = self.spec
        return tuple(e.name for e in spec.entities) + \
            tuple(c.name for c in spec.contexts) + \
            tuple(c.name for c in spec.controllers)


@dataclass(frozen=True)
class CheckResult:
    checked: Optional[CheckedSpec]
    violations: Tuple[RuleViolation, ...] = ()
    warnings: Tuple[ParseDiagnostic, ...] = ()

    @property
    def ok(self) -> bool:
        return self.checked is not None


class _Checker:
    def __init__(self, spec: Specification):
        self.spec = spec
        self.violations: List[RuleViolation] = []
        self.warnings: List[ParseDiagnostic] = []
        self.resolved: Dict[Tuple, DataType] = {}
        # name -> ("import"|"type"|"entity"|"context"|"controller", decl)
        self.names: Dict[str, Tuple[str, object]] = {}

    def violate(self, rule: str, span: SourceSpan, message: str) -> None:
        self.violations.append(RuleViolation(rule, span, message))

    def warn(self, span: SourceSpan, message: str) -> None:
        self.warnings.append(ParseDiagnostic(span, message, Severity.WARNING))

    # -- R6: name uniqueness -------------------------------------------------

    def collect_names(self) -> None:
        spec = self.spec
        decls = (
            [("import", i.local_name, i) for i in spec.imports]
            + [("type", t.name, t) for t in spec.types]
            + [("entity", e.name, e) for e in spec.entities]
            + [("context", c.name, c) for c in spec.contexts]
            + [("controller", c.name, c) for c in spec.controllers]
        )
        for kind, name, decl in decls:
            if name in self.names:
                prev_kind, _ = self.names[name]
                self.violate("R6", decl.span,
                             f"duplicate name {name!r}: already declared as "
                             f"{prev_kind}")
            else:
                self.names[name] = (kind, decl)

    def check_member_uniqueness(self) -> None:
        for t in self.spec.types:
            if isinstance(t, Enumeration):
                self._unique([(l, t.span) for l in t.labels],
                             f"label in enumeration {t.name!r}")
            else:
                self._unique([(n, t.span) for n, _ in t.fields],
                             f"field in structure {t.name!r}")
        for e in self.spec.entities:
            members = ([(a.name, a.span) for a in e.attributes]
                       + [(s.name, s.span) for s in e.sources]
                       + [(a.name, a.span) for a in e.actions])
            self._unique(members, f"member in entity {e.name!r}")
            for act in e.actions:
                self._unique([(p, act.span) for p, _ in act.params],
                             f"parameter of action {e.name}.{act.name}")
        for c in self.spec.contexts:
            refs = []
            for inp in c.inputs:
                if isinstance(inp, SourceInput):
                    refs.append((f"{inp.entity_class}.{inp.source_name}", inp.span))
                else:
                    refs.append((inp.context_name, inp.span))
            self._unique(refs, f"input of context {c.name!r}")
        for ctl in self.spec.controllers:
            self._unique([(i.context_name, i.span) for i in ctl.inputs],
                         f"input of controller {ctl.name!r}")
            self._unique([(f"{b.action_name} on {b.entity_class}", b.span)
                          for b in ctl.action_bindings],
                         f"action binding of controller {ctl.name!r}")

    def _unique(self, named: List[Tuple[str, SourceSpan]], what: str) -> None:
        seen = set()
        for name, span in named:
            if name in seen:
                self.violate("R6", span, f"duplicate {what}: {name!r}")
            seen.add(name)

    # -- R5: type resolution ---------------------------------------------------

    def resolve_type(self, t: DataType, key: Tuple) -> DataType:
        resolved = self._resolve(t)
        self.resolved[key] = resolved
        return resolved

    def _resolve(self, t: DataType) -> DataType:
        if isinstance(t, Primitive):
            return t
        if isinstance(t, ArrayOf):
            return ArrayOf(self._resolve(t.element), t.span)
        if isinstance(t, NamedRef):
            entry = self.names.get(t.name)
            if entry is None:
                self.violate("R5", t.span,
                             f"unknown type {t.name!r}: not declared or imported")
                return t
            kind, decl = entry
            if kind == "type":
                return decl  # Structure or Enumeration declaration
            if kind == "import":
                return Imported(decl.qualified_name, t.span)
            self.violate("R5", t.span,
                         f"{t.name!r} is {_article(kind)} {kind}, not a type")
            return t
        # Already-resolved declarations appear when specs are built in memory.
        return t

    def resolve_all_types(self) -> None:
        for t in self.spec.types:
            if isinstance(t, Structure):
                for fname, ftype in t.fields:
                    self.resolve_type(ftype, ("type", t.name, "field", fname))
        for e in self.spec.entities:
            for a in e.attributes:
                self.resolve_type(a.type, ("entity", e.name, "attribute", a.name))
            for s in e.sources:
                self.resolve_type(s.type, ("entity", e.name, "source", s.name))
            for act in e.actions:
                for pname, ptype in act.params:
                    self.resolve_type(
                        ptype, ("entity", e.name, "action", act.name, pname))
        for c in self.spec.contexts:
            self.resolve_type(c.output_type, ("context", c.name, "output"))

    # -- layering rules ---------------------------------------------------------

    def check_entities(self) -> None:
        # Entities consume nothing (the grammar cannot even express an entity
        # input); what remains checkable is that each one provides something.
        for e in self.spec.entities:
            if not e.sources and not e.actions:
                self.violate("R3", e.span,
                             f"entity class {e.name!r} declares neither "
                             "sources nor actions")

    def check_contexts(self) -> None:
        for c in self.spec.contexts:
            for inp in c.inputs:
                if isinstance(inp, SourceInput):
                    entry = self.names.get(inp.entity_class)
                    if entry is None or entry[0] != "entity":
                        if entry is not None and entry[0] != "entity":
                            self.violate(
                                "R2", inp.span,
                                f"context {c.name!r} may only consume entity "
                                f"sources here, but {inp.entity_class!r} is "
                                f"{_article(entry[0])} {entry[0]}")
                        else:
                            self.violate(
                                "R7", inp.span,
                                f"no entity class {inp.entity_class!r} "
                                f"declaring source {inp.source_name!r}")
                        continue
                    entity: EntityClass = entry[1]
                    src = entity.source(inp.source_name)
                    if src is None:
                        self.violate(
                            "R7", inp.span,
                            f"entity class {inp.entity_class!r} declares no "
                            f"source {inp.source_name!r}")
                        continue
                    key = ("context", c.name, "input",
                           f"{inp.entity_class}.{inp.source_name}")
                    self.resolved[key] = self.resolved.get(
                        ("entity", entity.name, "source", src.name), src.type)
                else:
                    entry = self.names.get(inp.context_name)
                    if entry is None or entry[0] != "context":
                        what = (f"{_article(entry[0])} {entry[0]}" if entry
                                else "not declared")
                        self.violate(
                            "R2", inp.span,
                            f"context {c.name!r} may only consume context "
                            f"outputs here, but {inp.context_name!r} is {what}")
                        continue
                    upstream: ContextOperator = entry[1]
                    key = ("context", c.name, "input", inp.context_name)
                    self.resolved[key] = self.resolved.get(
                        ("context", upstream.name, "output"), upstream.output_type)

    def check_controllers(self) -> None:
        for ctl in self.spec.controllers:
            for inp in ctl.inputs:
                entry = self.names.get(inp.context_name)
                if entry is None or entry[0] != "context":
                    what = (f"{_article(entry[0])} {entry[0]}" if entry
                            else "not declared")
                    self.violate(
                        "R1", inp.span,
                        f"controller {ctl.name!r} may only consume context "
                        f"outputs, but {inp.context_name!r} is {what}")
                    continue
                key = ("controller", ctl.name, "input", inp.context_name)
                self.resolved[key] = self.resolved.get(
                    ("context", inp.context_name, "output"),
                    entry[1].output_type)
            for ab in ctl.action_bindings:
                entry = self.names.get(ab.entity_class)
                if entry is None or entry[0] != "entity":
                    self.violate(
                        "R8", ab.span,
                        f"no entity class {ab.entity_class!r} declaring "
                        f"action {ab.action_name!r}")
                    continue
                entity: EntityClass = entry[1]
                if entity.action(ab.action_name) is None:
                    self.violate(
                        "R8", ab.span,
                        f"entity class {ab.entity_class!r} declares no "
                        f"action {ab.action_name!r}")

    # -- R4: acyclicity ---------------------------------------------------------

    def check_acyclic(self) -> None:
        succ: Dict[str, List[str]] = {c.name: [] for c in self.spec.contexts}
        for c in self.spec.contexts:
            for inp in c.inputs:
                if isinstance(inp, ContextInput) and inp.context_name in succ:
                    succ[inp.context_name].append(c.name)
        color: Dict[str, int] = {}
        stack: List[str] = []
        cycles: List[List[str]] = []

        def visit(node: str) -> None:
            color[node] = 1
            stack.append(node)
            for nxt in succ[node]:
                state = color.get(nxt, 0)
                if state == 0:
                    visit(nxt)
                elif state == 1:
                    cycle = stack[stack.index(nxt):] + [nxt]
                    cycles.append(cycle)
            stack.pop()
            color[node] = 2

        for name in sorted(succ):
            if color.get(name, 0) == 0:
                visit(name)
        reported = set()
        for cycle in cycles:
            key = frozenset(cycle)
            if key in reported:
                continue
            reported.add(key)
            first = min(cycle[:-1])
            ctx = self.spec.context(first)
            self.violate("R4", ctx.span if ctx else self.spec.contexts[0].span,
                         "context dependency cycle: " + " -> ".join(cycle))

    # -- warnings ----------------------------------------------------------------

    def check_unused(self) -> None:
        used_entities = set()
        for c in self.spec.contexts:
            for inp in c.inputs:
                if isinstance(inp, SourceInput):
                    used_entities.add(inp.entity_class)
        for ctl in self.spec.controllers:
            for ab in ctl.action_bindings:
                used_entities.add(ab.entity_class)
        for e in self.spec.entities:
            if e.name not in used_entities:
                self.warn(e.span, f"entity class {e.name!r} is never referenced")

    # -- graph --------------------------------------------------------------------

    def build_graph(self) -> Tuple[Tuple[Node, ...], Tuple[Tuple[Node, Node], ...]]:
        nodes: List[Node] = []
        edges: List[Tuple[Node, Node]] = []
        for e in self.spec.entities:
            for s in e.sources:
                nodes.append(("source", e.name, s.name))
            for a in e.actions:
                nodes.append(("action", e.name, a.name))
        for c in self.spec.contexts:
            nodes.append(("context", c.name))
        for ctl in self.spec.controllers:
            nodes.append(("controller", ctl.name))
        node_set = set(nodes)
        for c in self.spec.contexts:
            for inp in c.inputs:
                if isinstance(inp, SourceInput):
                    src: Node = ("source", inp.entity_class, inp.source_name)
                else:
                    src = ("context", inp.context_name)
                if src in node_set:
                    edges.append((src, ("context", c.name)))
        for ctl in self.spec.controllers:
            for inp in ctl.inputs:
                src = ("context", inp.context_name)
                if src in node_set:
                    edges.append((src, ("controller", ctl.name)))
            for ab in ctl.action_bindings:
                dst: Node = ("action", ab.entity_class, ab.action_name)
                if dst in node_set:
                    edges.append((("controller", ctl.name), dst))
        return tuple(sorted(set(nodes))), tuple(sorted(set(edges)))


def _article(kind: str) -> str:
    return "an" if kind[0] in "aeiou" else "a"


def check(spec: Specification) -> CheckResult:
    """Validate a specification; deterministic, reports all violations."""
    checker = _Checker(spec)
    checker.collect_names()
    checker.check_member_uniqueness()
    checker.resolve_all_types()
    checker.check_entities()
    checker.check_contexts()
    checker.check_controllers()
    checker.check_acyclic()
    checker.check_unused()
    violations = tuple(sorted(
        checker.violations,
        key=lambda v: (v.span.file, v.span.start_line, v.span.start_col,
                       v.rule_id, v.message)))
    warnings = tuple(sorted(
        checker.warnings,
        key=lambda w: (w.span.file, w.span.start_line, w.span.start_col,
                       w.message)))
    if violations:
        return CheckResult(None, violations, warnings)
    nodes, edges = checker.build_graph()
    return CheckResult(
        CheckedSpec(spec, checker.resolved, nodes, edges, warnings),
        (), warnings)


# -- DOT export ----------------------------------------------------------------

_NODE_SHAPE = {"source": "box", "action": "box",
               "context": "ellipse", "controller": "diamond"}


def _node_id(node: Node) -> str:
    if node[0] in ("source", "action"):
        return f"{node[1]}.{node[2]}"
    return node[1]


def export_graph(checked: CheckedSpec) -> str:
    """Component graph as a DOT digraph, one node per design component.

    Entity boxes aggregate their sources and actions; ellipses are context
    operators, diamonds controllers.  Node ordering is lexicographic and
    the output is byte-stable across runs.
    """
    spec = checked.spec
    lines = ["digraph design {", "  rankdir=BT;"]
    for name in sorted(e.name for e in spec.entities):
        lines.append(f'  "{name}" [shape=box];')
    for name in sorted(c.name for c in spec.contexts):
        lines.append(f'  "{name}" [shape=ellipse];')
    for name in sorted(c.name for c in spec.controllers):
        lines.append(f'  "{name}" [shape=diamond];')
    comp_edges: Dict[Tuple[str, str], List[str]] = {}
    for src, dst in checked.edges:
        a = src[1]
        b = dst[1]
        label = ""
        if src[0] == "source":
            label = src[2]
        elif dst[0] == "action":
            label = dst[2]
        comp_edges.setdefault((a, b), [])
        if label:
            comp_edges[(a, b)].append(label)
    for (a, b) in sorted(comp_edges):
        labels = sorted(comp_edges[(a, b)])
        attr = f' [label="{", ".join(labels)}"]' if labels else ""
        lines.append(f'  "{a}" -> "{b}"{attr};')
    lines.append("}")
    return "\n".join(lines) + "\n"
