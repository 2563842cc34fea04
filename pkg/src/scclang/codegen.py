"""Emits the design-specific programming framework from a checked spec.

One Python module per component plus ``datatypes``, ``deploy`` and the
package ``__init__``, all under ``generated/``, with a ``manifest.json``
listing every implementation point the developer must supply.  Generation
is a pure function of the checked specification: the same input produces
byte-identical output, and nothing outside ``generated/`` and
``manifest.json`` is ever written, so regenerating after a design change
never touches developer code.

The framework is prescriptive and restrictive at once.  Each abstract
class declares exactly the callbacks, publish methods, pull proxies and
discovery handles its component is allowed by the design, and nothing
else: a controller class has no way to publish, an entity class no way to
subscribe.  The naming contract is part of the framework's API:

    on<Input>(value, pulls|actions)      abstract callback per push input
    publish<Source|Context>(value)       publish capability
    get<Source|Context>()                pull proxy
    discover<EntityClass>ForSubscribe    discovery handle (.all()/.where())
    subscribe<Source>()                  live subscription terminal
    postInitialize()                     post-wiring hook
    create<Component>() / deployAll()    deployment scaffold
"""

from __future__ import annotations

import json
import keyword
import os
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .analyzer import CheckedSpec
from .model import (
    ArrayOf, ContextInput, ContextOperator, ControlOperator, DataType,
    EntityClass, Enumeration, Imported, Interaction, NamedRef, Primitive,
    PrimitiveKind, SourceInput, Structure, type_name,
)

HEADER = (
    "# GENERATED — DO NOT EDIT.\n"
    "# Produced by the design compiler; changes here are lost on the next\n"
    "# `scclang compile`. Implement components by subclassing instead.\n"
)


class CodegenError(Exception):
    pass


@dataclass(frozen=True)
class ImplementationPoint:
    component_name: str
    kind: str  # ContextCallback | ControllerCallback | EntitySourceProvider
               # | EntityActionHandler | DeployFactory
    required_signature: str


@dataclass(frozen=True)
class GeneratedFramework:
    units: Tuple[Tuple[str, str], ...]  # (relative path, source text)
    manifest: Tuple[ImplementationPoint, ...]

    def unit(self, path: str) -> str:
        for p, text in self.units:
            if p == path:
                return text
        raise KeyError(path)


def cap_first(name: str) -> str:
    return name[0].upper() + name[1:]


def lower_first(name: str) -> str:
    return name[0].lower() + name[1:]


_KIND_RANK = {"entity": 0, "context": 1, "controller": 2}
_RESERVED_MODULES = {"__init__", "datatypes", "deploy"}


def _ident(name: str, what: str) -> str:
    if keyword.iskeyword(name):
        raise CodegenError(
            f"{what} {name!r} collides with a reserved word of the target "
            "language; rename it in the design")
    return name


def _py_hint(t: DataType) -> str:
    if isinstance(t, Primitive):
        return {PrimitiveKind.BOOLEAN: "bool", PrimitiveKind.INTEGER: "int",
                PrimitiveKind.FLOAT: "float", PrimitiveKind.STRING: "str"}[t.kind]
    if isinstance(t, ArrayOf):
        return f"list[{_py_hint(t.element)}]"
    if isinstance(t, (Structure, Enumeration)):
        return t.name
    if isinstance(t, Imported):
        return t.local_name
    if isinstance(t, NamedRef):
        return t.name
    raise CodegenError(f"unexpected type {t!r}")


def _check_expr(t: DataType) -> str:
    if isinstance(t, Primitive):
        return {PrimitiveKind.BOOLEAN: "BOOL_T", PrimitiveKind.INTEGER: "INT_T",
                PrimitiveKind.FLOAT: "FLOAT_T",
                PrimitiveKind.STRING: "STR_T"}[t.kind]
    if isinstance(t, ArrayOf):
        return f"ARRAY({_check_expr(t.element)})"
    if isinstance(t, (Structure, Enumeration)):
        return f"INSTANCE(datatypes.{t.name})"
    if isinstance(t, Imported):
        return "OPAQUE_T"
    raise CodegenError(f"unresolved type reference {type_name(t)!r} "
                       "reached the generator")


class _Gen:
    def __init__(self, checked: CheckedSpec):
        self.checked = checked
        self.spec = checked.spec
        # (entity, source) pairs some consumer pulls
        self.pulled_sources = {
            (inp.entity_class, inp.source_name)
            for c in self.spec.contexts for inp in c.inputs
            if isinstance(inp, SourceInput)
            and inp.interaction is Interaction.PULL}
        self.components = sorted(
            [(e.name, "entity", e) for e in self.spec.entities]
            + [(c.name, "context", c) for c in self.spec.contexts]
            + [(c.name, "controller", c) for c in self.spec.controllers],
            key=lambda item: (_KIND_RANK[item[1]], item[0]))
        self.manifest: List[ImplementationPoint] = []

    # -- resolution helpers ----------------------------------------------------

    def source_type(self, entity: str, source: str) -> DataType:
        return self.checked.resolved_types[("entity", entity, "source", source)]

    def output_type(self, context: str) -> DataType:
        return self.checked.resolved_types[("context", context, "output")]

    def callback_name(self, inp) -> str:
        base = inp.source_name if isinstance(inp, SourceInput) else inp.context_name
        return "on" + cap_first(base)

    # -- datatypes ----------------------------------------------------------------

    def gen_datatypes(self) -> str:
        lines = [HEADER, '"""Data types declared or imported by the design."""',
                 "", "from __future__ import annotations", ""]
        body: List[str] = []
        if any(isinstance(t, Structure) for t in self.spec.types):
            body.append("from dataclasses import dataclass")
        if any(isinstance(t, Enumeration) for t in self.spec.types):
            body.append("from enum import Enum")
        for imp in self.spec.imports:
            if "." in imp.qualified_name:
                module, name = imp.qualified_name.rsplit(".", 1)
                body.append(f"from {module} import {name}")
            else:
                body.append(f"import {imp.qualified_name}")
        if body:
            lines.extend(body)
        for t in self.spec.types:
            lines.append("")
            lines.append("")
            if isinstance(t, Enumeration):
                lines.append(f"class {_ident(t.name, 'enumeration')}(Enum):")
                for label in t.labels:
                    lines.append(f'    {_ident(label, "label")} = "{label}"')
            else:
                lines.append("@dataclass(frozen=True)")
                lines.append(f"class {_ident(t.name, 'structure')}:")
                for fname, _ in t.fields:
                    ftype = self.checked.resolved_types[
                        ("type", t.name, "field", fname)]
                    lines.append(f"    {_ident(fname, 'field')}: "
                                 f"{_py_hint(ftype)}")
        return "\n".join(lines) + "\n"

    # -- entities --------------------------------------------------------------------

    def gen_entity(self, e: EntityClass) -> str:
        name = _ident(e.name, "entity class")
        lines = [HEADER, f'"""Entity class {name}."""', "", "import abc", "",
                 "from scclang.runtime import EntityBase", ""]
        lines.append("")
        lines.append(f"class Abstract{name}(EntityBase, abc.ABC):")
        doc = f"Wraps one {name} device/capability; subclass and implement."
        lines.append(f'    """{doc}"""')
        lines.append("")
        lines.append(f'    COMPONENT_NAME = "{name}"')
        lines.append("")
        params = ", ".join(_ident(a.name, "attribute") for a in e.attributes)
        attr_dict = ", ".join(f'"{a.name}": {a.name}' for a in e.attributes)
        lines.append(f"    def __init__(self{', ' + params if params else ''}):")
        lines.append(f'        super().__init__("{name}", {{{attr_dict}}})')
        for s in e.sources:
            method = "publish" + cap_first(_ident(s.name, "source"))
            stype = type_name(self.source_type(e.name, s.name))
            lines.append("")
            lines.append(f"    def {method}(self, value):")
            lines.append(f'        """Publish on the {s.name} source '
                         f'({stype})."""')
            lines.append(f'        self._publish("{s.name}", value)')
            if (e.name, s.name) in self.pulled_sources:
                provider = "get" + cap_first(s.name)
                lines.append("")
                lines.append("    @abc.abstractmethod")
                lines.append(f"    def {provider}(self):")
                lines.append(f'        """Answer a pull request with the '
                             f'current {s.name} value ({stype})."""')
                self.manifest.append(ImplementationPoint(
                    e.name, "EntitySourceProvider", f"def {provider}(self)"))
        for act in e.actions:
            handler = lower_first(_ident(act.name, "action"))
            _ident(handler, "action handler")
            params = "".join(
                ", " + _ident(p, "parameter") for p, _ in act.params)
            lines.append("")
            lines.append("    @abc.abstractmethod")
            lines.append(f"    def {handler}(self{params}):")
            lines.append(f'        """Perform the {act.name} action."""')
            self.manifest.append(ImplementationPoint(
                e.name, "EntityActionHandler", f"def {handler}(self{params})"))
        return "\n".join(lines) + "\n"

    # -- contexts ---------------------------------------------------------------------

    def gen_context(self, c: ContextOperator) -> str:
        name = _ident(c.name, "context operator")
        out_name = type_name(self.output_type(c.name))
        push = [i for i in c.inputs if i.interaction is Interaction.PUSH]
        pull = [i for i in c.inputs if i.interaction is Interaction.PULL]
        self._check_callback_collisions(c.name, push)

        imports = ["from scclang.runtime import ContextBase"]
        if any(isinstance(i, SourceInput) for i in push):
            imports = ["from scclang.runtime import ContextBase, DiscoveryProxy"]
        lines = [HEADER, f'"""Context operator {name} (output {out_name})."""',
                 "", "import abc", ""] + imports + [""]

        if pull:
            lines.append("")
            lines.append("class _Pulls:")
            lines.append(f'    """Pull proxies available to {name} callbacks."""')
            lines.append("")
            lines.append("    def __init__(self, component):")
            lines.append("        self._component = component")
            for inp in pull:
                if isinstance(inp, SourceInput):
                    getter = "get" + cap_first(inp.source_name)
                    rtype = type_name(
                        self.source_type(inp.entity_class, inp.source_name))
                    lines.append("")
                    lines.append(f"    def {getter}(self):")
                    lines.append(
                        f'        """Request the current {inp.source_name} '
                        f'value ({rtype}) from every {inp.entity_class} '
                        'instance."""')
                    lines.append(
                        f'        return self._component._request('
                        f'"{inp.entity_class}", "{inp.source_name}")')
                else:
                    getter = "get" + cap_first(inp.context_name)
                    lines.append("")
                    lines.append(f"    def {getter}(self):")
                    lines.append(
                        f'        """Last value published by the '
                        f'{inp.context_name} context (None before the '
                        'first)."""')
                    lines.append(
                        f'        return self._component._request_context('
                        f'"{inp.context_name}")')

        lines.append("")
        lines.append(f"class Abstract{name}(ContextBase, abc.ABC):")
        lines.append(f'    """Refines its inputs into {out_name} values; '
                     'subclass and implement."""')
        lines.append("")
        lines.append(f'    COMPONENT_NAME = "{name}"')
        lines.append("")
        lines.append("    _DISPATCH = {")
        for inp in push:
            cb = self.callback_name(inp)
            if isinstance(inp, SourceInput):
                key = f'("{inp.entity_class}", "{inp.source_name}")'
            else:
                key = f'("{inp.context_name}", "{inp.context_name}")'
            lines.append(f'        {key}: "_call{cap_first(cb)}",')
        lines.append("    }")
        lines.append("")
        lines.append("    def __init__(self):")
        lines.append(f'        super().__init__("{name}")')
        if pull:
            lines.append("        self._pulls = _Pulls(self)")
        discover_classes: Dict[str, Dict[str, str]] = {}
        for inp in push:
            if isinstance(inp, SourceInput):
                discover_classes.setdefault(inp.entity_class, {})[
                    inp.source_name] = "subscribe" + cap_first(inp.source_name)
        for cls in sorted(discover_classes):
            subs = discover_classes[cls]
            mapping = ", ".join(f'"{s}": "{m}"' for s, m in sorted(subs.items()))
            lines.append(
                f"        self.discover{cls}ForSubscribe = DiscoveryProxy(")
            lines.append(f'            self, "{cls}", {{{mapping}}})')
        for inp in push:
            cb = self.callback_name(inp)
            if isinstance(inp, SourceInput):
                vtype = type_name(
                    self.source_type(inp.entity_class, inp.source_name))
                origin = f"{inp.entity_class}.{inp.source_name}"
            else:
                vtype = type_name(self.output_type(inp.context_name))
                origin = inp.context_name
            lines.append("")
            lines.append("    @abc.abstractmethod")
            lines.append(f"    def {cb}(self, value, pulls):")
            lines.append(f'        """React to a {origin} event '
                         f'({vtype})."""')
            self.manifest.append(ImplementationPoint(
                c.name, "ContextCallback", f"def {cb}(self, value, pulls)"))
            lines.append("")
            lines.append(f"    def _call{cap_first(cb)}(self, event):")
            lines.append(f"        self.{cb}(event.value, self._pulls)")
        publish = "publish" + cap_first(name)
        lines.append("")
        lines.append(f"    def {publish}(self, value):")
        lines.append(f'        """Publish the {name} output ({out_name})."""')
        lines.append("        self._publish_output(value)")
        return "\n".join(lines) + "\n"

    # -- controllers ---------------------------------------------------------------------

    def gen_controller(self, c: ControlOperator) -> str:
        name = _ident(c.name, "controller")
        self._check_callback_collisions(c.name, c.inputs)
        by_class: Dict[str, List] = {}
        for ab in c.action_bindings:
            by_class.setdefault(ab.entity_class, []).append(ab)

        lines = [HEADER, f'"""Control operator {name}."""', "", "import abc",
                 "", "from scclang.runtime import ControllerBase", ""]
        proxy_attrs: List[Tuple[str, str]] = []
        for cls in sorted(by_class):
            proxy_cls = f"_{cls}Actions"
            attr = lower_first(cls)
            _ident(attr, "action proxy")
            proxy_attrs.append((attr, proxy_cls))
            lines.append("")
            lines.append(f"class {proxy_cls}:")
            lines.append(f'    """Actions the design allows {name} to invoke '
                         f'on {cls} entities."""')
            lines.append("")
            lines.append("    def __init__(self, component):")
            lines.append("        self._component = component")
            for ab in by_class[cls]:
                entity = self.spec.entity(ab.entity_class)
                sig = entity.action(ab.action_name)
                method = lower_first(_ident(ab.action_name, "action"))
                _ident(method, "action method")
                params = "".join(", " + _ident(p, "parameter")
                                 for p, _ in sig.params)
                args = ", ".join(p for p, _ in sig.params)
                args_tuple = f"({args},)" if args else "()"
                lines.append("")
                lines.append(f"    def {method}(self{params}):")
                lines.append(f'        """Invoke {ab.action_name} on every '
                             f'registered {cls} entity."""')
                lines.append(f'        self._component._invoke_action('
                             f'"{cls}", "{ab.action_name}", {args_tuple})')

        lines.append("")
        lines.append("class _Actions:")
        lines.append("    def __init__(self, component):")
        if proxy_attrs:
            for attr, proxy_cls in proxy_attrs:
                lines.append(f"        self.{attr} = {proxy_cls}(component)")
        else:
            lines.append("        pass")

        lines.append("")
        lines.append("")
        lines.append(f"class Abstract{name}(ControllerBase, abc.ABC):")
        lines.append(f'    """Turns context information into actuator orders; '
                     'subclass and implement."""')
        lines.append("")
        lines.append(f'    COMPONENT_NAME = "{name}"')
        lines.append("")
        lines.append("    _DISPATCH = {")
        for inp in c.inputs:
            cb = self.callback_name(inp)
            lines.append(f'        ("{inp.context_name}", '
                         f'"{inp.context_name}"): "_call{cap_first(cb)}",')
        lines.append("    }")
        lines.append("")
        lines.append("    def __init__(self):")
        lines.append(f'        super().__init__("{name}")')
        lines.append("        self._actions = _Actions(self)")
        for inp in c.inputs:
            cb = self.callback_name(inp)
            vtype = type_name(self.output_type(inp.context_name))
            lines.append("")
            lines.append("    @abc.abstractmethod")
            lines.append(f"    def {cb}(self, value, actions):")
            lines.append(f'        """React to a {inp.context_name} event '
                         f'({vtype})."""')
            self.manifest.append(ImplementationPoint(
                c.name, "ControllerCallback", f"def {cb}(self, value, actions)"))
            lines.append("")
            lines.append(f"    def _call{cap_first(cb)}(self, event):")
            lines.append(f"        self.{cb}(event.value, self._actions)")
        return "\n".join(lines) + "\n"

    def _check_callback_collisions(self, owner: str, inputs) -> None:
        seen: Dict[str, str] = {}
        for inp in inputs:
            cb = self.callback_name(inp)
            ref = (f"{inp.entity_class}.{inp.source_name}"
                   if isinstance(inp, SourceInput) else inp.context_name)
            if cb in seen:
                raise CodegenError(
                    f"inputs {seen[cb]!r} and {ref!r} of {owner!r} both map "
                    f"to callback {cb}(); rename one in the design")
            seen[cb] = ref

    # -- deploy ------------------------------------------------------------------------------

    def gen_deploy(self) -> str:
        lines = [HEADER,
                 '"""Deployment scaffold: one factory per component."""', "",
                 "import abc", "",
                 "from scclang.runtime import (ARRAY, BOOL_T, FLOAT_T, INSTANCE,"
                 " INT_T, OPAQUE_T,",
                 "                             STR_T, ActionSpec, ComponentSpec,"
                 " DesignInfo,",
                 "                             SourceSpec, deploy_all)",
                 ]
        if self.spec.types or self.spec.imports:
            lines.append("")
            lines.append("from . import datatypes")
        lines.append("")
        lines.append("DESIGN = DesignInfo(components=(")
        for name, kind, decl in self.components:
            lines.extend(self._component_spec_lines(name, kind, decl))
        lines.append("))")
        lines.append("")
        lines.append("")
        lines.append("class AbstractMainDeploy(abc.ABC):")
        lines.append('    """Subclass, implement every factory, then call '
                     'deployAll()."""')
        for name, kind, _ in self.components:
            factory = f"create{cap_first(name)}"
            lines.append("")
            lines.append("    @abc.abstractmethod")
            lines.append(f"    def {factory}(self):")
            lines.append(f'        """Return the {name} {kind} '
                         'implementation."""')
            self.manifest.append(ImplementationPoint(
                name, "DeployFactory", f"def {factory}(self)"))
        lines.append("")
        lines.append("    def deployAll(self, *, clock=None, trace=None,"
                     ' mode="threaded",')
        lines.append("                  queue_capacity=1024):")
        lines.append('        """Instantiate, wire and start the whole '
                     'design."""')
        lines.append("        factories = {")
        for name, _, _ in self.components:
            lines.append(f'            "{name}": self.create{cap_first(name)},')
        lines.append("        }")
        lines.append("        return deploy_all(DESIGN, factories, clock=clock,"
                     " trace=trace,")
        lines.append("                          mode=mode, "
                     "queue_capacity=queue_capacity)")
        return "\n".join(lines) + "\n"

    def _component_spec_lines(self, name, kind, decl) -> List[str]:
        out = [f'    ComponentSpec(']
        out.append(f'        name="{name}", kind="{kind}",')
        if kind == "entity":
            if decl.sources:
                items = []
                for s in decl.sources:
                    check = _check_expr(self.source_type(name, s.name))
                    provider = ('"get' + cap_first(s.name) + '"'
                                if (name, s.name) in self.pulled_sources
                                else "None")
                    items.append(f'SourceSpec("{s.name}", {check}, {provider})')
                out.append("        sources=(" + ", ".join(items) + ",),")
            if decl.actions:
                items = []
                for a in decl.actions:
                    params = ", ".join(f'"{p}"' for p, _ in a.params)
                    params_t = f"({params},)" if params else "()"
                    items.append(f'ActionSpec("{a.name}", '
                                 f'"{lower_first(a.name)}", {params_t})')
                out.append("        actions=(" + ", ".join(items) + ",),")
            if decl.attributes:
                attrs = ", ".join(f'"{a.name}"' for a in decl.attributes)
                out.append(f"        attributes=({attrs},),")
        else:
            if kind == "context":
                out.append("        output_check="
                           f"{_check_expr(self.output_type(name))},")
            push, pull = [], []
            for inp in decl.inputs:
                if isinstance(inp, SourceInput):
                    ref = f'("source", "{inp.entity_class}", "{inp.source_name}")'
                else:
                    ref = f'("context", "{inp.context_name}")'
                if getattr(inp, "interaction", Interaction.PUSH) \
                        is Interaction.PULL:
                    pull.append(ref)
                else:
                    push.append(ref)
            if push:
                out.append("        push_inputs=(" + ", ".join(push) + ",),")
            if pull:
                out.append("        pull_inputs=(" + ", ".join(pull) + ",),")
        out.append("    ),")
        return out

    # -- package ------------------------------------------------------------------------------

    def gen_init(self) -> str:
        lines = [HEADER, '"""Design-specific programming framework."""', ""]
        names = []
        if self.spec.types or self.spec.imports:
            lines.append("from . import datatypes")
            names.append("datatypes")
        for name, kind, _ in self.components:
            lines.append(f"from .{name} import Abstract{name}")
            names.append(f"Abstract{name}")
        lines.append("from .deploy import DESIGN, AbstractMainDeploy")
        names.extend(["DESIGN", "AbstractMainDeploy"])
        lines.append("")
        lines.append("__all__ = [")
        for n in names:
            lines.append(f'    "{n}",')
        lines.append("]")
        return "\n".join(lines) + "\n"

    def generate(self) -> GeneratedFramework:
        for name, _, _ in self.components:
            if name in _RESERVED_MODULES or keyword.iskeyword(name):
                raise CodegenError(
                    f"component name {name!r} is reserved in the target "
                    "layout; rename it in the design")
        units: List[Tuple[str, str]] = []
        units.append(("generated/datatypes.py", self.gen_datatypes()))
        for name, kind, decl in self.components:
            if kind == "entity":
                text = self.gen_entity(decl)
            elif kind == "context":
                text = self.gen_context(decl)
            else:
                text = self.gen_controller(decl)
            units.append((f"generated/{name}.py", text))
        units.append(("generated/deploy.py", self.gen_deploy()))
        units.append(("generated/__init__.py", self.gen_init()))
        manifest = tuple(sorted(
            self.manifest,
            key=lambda p: (p.component_name, p.kind, p.required_signature)))
        manifest_json = json.dumps(
            [{"componentName": p.component_name, "kind": p.kind,
              "requiredSignature": p.required_signature} for p in manifest],
            indent=2) + "\n"
        units.append(("manifest.json", manifest_json))
        return GeneratedFramework(tuple(sorted(units)), manifest)


def generate_framework(checked: CheckedSpec) -> GeneratedFramework:
    """Pure generation: no filesystem access, byte-deterministic."""
    return _Gen(checked).generate()


def write_framework(framework: GeneratedFramework, out_dir: str) -> List[str]:
    """Write (or overwrite) the generated tree below ``out_dir``."""
    written = []
    for rel_path, text in framework.units:
        path = os.path.join(out_dir, rel_path)
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        written.append(path)
    return written


def generate(checked: CheckedSpec, out_dir: str) -> GeneratedFramework:
    framework = generate_framework(checked)
    write_framework(framework, out_dir)
    return framework


def scaffold_stubs(checked: CheckedSpec, framework: GeneratedFramework,
                   scaffold_dir: str) -> List[str]:
    """Emit one-time developer stubs; refuses to overwrite existing files."""
    spec = checked.spec
    files: List[Tuple[str, str]] = []
    points: Dict[str, List[ImplementationPoint]] = {}
    for p in framework.manifest:
        points.setdefault(p.component_name, []).append(p)
    components = sorted(
        [(e.name, "entity") for e in spec.entities]
        + [(c.name, "context") for c in spec.contexts]
        + [(c.name, "controller") for c in spec.controllers],
        key=lambda item: (_KIND_RANK[item[1]], item[0]))
    for name, kind in components:
        lines = [f'"""Implementation of the {name} {kind}."""', "",
                 f"from generated.{name} import Abstract{name}", "", "",
                 f"class {name}(Abstract{name}):"]
        body = [p for p in points.get(name, [])
                if p.kind != "DeployFactory"]
        if not body:
            lines.append("    pass")
        for p in body:
            lines.append("")
            lines.append(f"    {p.required_signature}:")
            lines.append("        raise NotImplementedError")
        files.append((f"{name}.py", "\n".join(lines) + "\n"))
    deploy_lines = ['"""Deployment script for this design."""', "",
                    "from generated.deploy import AbstractMainDeploy", ""]
    for name, _ in components:
        deploy_lines.append(f"from {name} import {name}")
    deploy_lines.extend(["", "", "class MainDeploy(AbstractMainDeploy):"])
    if not components:
        deploy_lines.append("    pass")
    for name, _ in components:
        deploy_lines.append("")
        deploy_lines.append(f"    def create{cap_first(name)}(self):")
        deploy_lines.append(f"        return {name}()")
    files.append(("deploy.py", "\n".join(deploy_lines) + "\n"))

    existing = [f for f, _ in files
                if os.path.exists(os.path.join(scaffold_dir, f))]
    if existing:
        raise FileExistsError(
            "refusing to overwrite existing files in scaffold directory: "
            + ", ".join(sorted(existing)))
    os.makedirs(scaffold_dir, exist_ok=True)
    written = []
    for rel, text in files:
        path = os.path.join(scaffold_dir, rel)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        written.append(path)
    return written
