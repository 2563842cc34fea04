"""Abstract syntax and data-type system for SCC design descriptions.

The model is shared by the parser (which builds it), the analyzer (which
resolves and validates it) and the code generator (which consumes the
checked form).  All nodes are frozen dataclasses: immutable after
construction and safe to share between threads.

Type references in declarations stay *syntactic* until the analyzer runs:
``source twist as Twist`` parses to a ``NamedRef("Twist")`` which the
analyzer later resolves against declared structures/enumerations or
imports.  Declared structures and enumerations are compared nominally
(by name); primitives and arrays structurally.  Source spans never
participate in equality, so two parses of the same text compare equal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple, Union

IDENTIFIER_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class SourceSpan:
    """1-based [start, end] region of a source file."""

    file: str
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def __post_init__(self):
        if (self.end_line, self.end_col) < (self.start_line, self.start_col):
            raise ValueError("span end precedes start")

    def __str__(self) -> str:
        return f"{self.file}:{self.start_line}:{self.start_col}"


# Placeholder for programmatically-built specs that never saw a file.
NO_SPAN = SourceSpan("<none>", 1, 1, 1, 1)


class PrimitiveKind(Enum):
    BOOLEAN = "Boolean"
    INTEGER = "Integer"
    FLOAT = "Float"
    STRING = "String"


@dataclass(frozen=True)
class Primitive:
    kind: PrimitiveKind
    span: SourceSpan = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class Enumeration:
    """Declared enumeration; compared by name (nominal)."""

    name: str
    labels: Tuple[str, ...]
    span: SourceSpan = field(default=NO_SPAN, compare=False)

    def __eq__(self, other):
        return isinstance(other, Enumeration) and self.name == other.name

    def __hash__(self):
        return hash(("enumeration", self.name))


@dataclass(frozen=True)
class Structure:
    """Declared structure; compared by name (nominal)."""

    name: str
    fields: Tuple[Tuple[str, "DataType"], ...]
    span: SourceSpan = field(default=NO_SPAN, compare=False)

    def __eq__(self, other):
        return isinstance(other, Structure) and self.name == other.name

    def __hash__(self):
        return hash(("structure", self.name))


@dataclass(frozen=True)
class Imported:
    """Externally-defined type, opaque to the checker.

    Equal iff the qualified names are equal; the checker never looks
    inside.  Conversion to/from native values is the entity
    implementation's job.
    """

    qualified_name: str
    span: SourceSpan = field(default=NO_SPAN, compare=False)

    @property
    def local_name(self) -> str:
        return self.qualified_name.rsplit(".", 1)[-1]


@dataclass(frozen=True)
class ArrayOf:
    element: "DataType"
    span: SourceSpan = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class NamedRef:
    """Unresolved reference to a declared or imported type name."""

    name: str
    span: SourceSpan = field(default=NO_SPAN, compare=False)


DataType = Union[Primitive, Enumeration, Structure, Imported, ArrayOf, NamedRef]

BOOLEAN = Primitive(PrimitiveKind.BOOLEAN)
INTEGER = Primitive(PrimitiveKind.INTEGER)
FLOAT = Primitive(PrimitiveKind.FLOAT)
STRING = Primitive(PrimitiveKind.STRING)


def type_equal(a: DataType, b: DataType) -> bool:
    """Structural equality for primitives/arrays, nominal for the rest.

    An imported ``Twist`` and a declared ``Twist`` never unify: they are
    different constructors.  Unresolved references compare by name, which
    is consistent with the nominal rule once both sides resolve.
    """
    if type(a) is not type(b):
        return False
    if isinstance(a, Primitive):
        return a.kind is b.kind
    if isinstance(a, ArrayOf):
        return type_equal(a.element, b.element)
    if isinstance(a, (Enumeration, Structure)):
        return a.name == b.name
    if isinstance(a, Imported):
        return a.qualified_name == b.qualified_name
    if isinstance(a, NamedRef):
        return a.name == b.name
    raise TypeError(f"not a DataType: {a!r}")


def type_name(t: DataType) -> str:
    """Human-readable spelling, matching the concrete syntax."""
    if isinstance(t, Primitive):
        return t.kind.value
    if isinstance(t, ArrayOf):
        return type_name(t.element) + "[]"
    if isinstance(t, (Enumeration, Structure)):
        return t.name
    if isinstance(t, Imported):
        return t.local_name
    if isinstance(t, NamedRef):
        return t.name
    raise TypeError(f"not a DataType: {t!r}")


class Interaction(Enum):
    """How a consumer obtains data: producers push, or consumers pull."""

    PUSH = "push"
    PULL = "pull"


@dataclass(frozen=True)
class SourceInput:
    """Context input bound to an entity-class source (``source s from E``)."""

    source_name: str
    entity_class: str
    interaction: Interaction = Interaction.PUSH
    span: SourceSpan = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class ContextInput:
    """Context or controller input bound to an upstream context output."""

    context_name: str
    interaction: Interaction = Interaction.PUSH
    span: SourceSpan = field(default=NO_SPAN, compare=False)


InputBinding = Union[SourceInput, ContextInput]


@dataclass(frozen=True)
class ActionSig:
    name: str
    params: Tuple[Tuple[str, DataType], ...] = ()
    span: SourceSpan = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class AttributeDecl:
    name: str
    type: DataType
    span: SourceSpan = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class SourceDecl:
    name: str
    type: DataType
    span: SourceSpan = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class EntityClass:
    """Groups the sources, actions and attributes of one device/capability."""

    name: str
    attributes: Tuple[AttributeDecl, ...] = ()
    sources: Tuple[SourceDecl, ...] = ()
    actions: Tuple[ActionSig, ...] = ()
    span: SourceSpan = field(default=NO_SPAN, compare=False)

    def source(self, name: str) -> Optional[SourceDecl]:
        return next((s for s in self.sources if s.name == name), None)

    def action(self, name: str) -> Optional[ActionSig]:
        return next((a for a in self.actions if a.name == name), None)

    def attribute(self, name: str) -> Optional[AttributeDecl]:
        return next((a for a in self.attributes if a.name == name), None)


@dataclass(frozen=True)
class ContextOperator:
    """Refines sensor/context data into higher-level information."""

    name: str
    output_type: DataType
    inputs: Tuple[InputBinding, ...]
    span: SourceSpan = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class ActionBinding:
    action_name: str
    entity_class: str
    span: SourceSpan = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class ControlOperator:
    """Turns context information into actuator orders."""

    name: str
    inputs: Tuple[ContextInput, ...]
    action_bindings: Tuple[ActionBinding, ...]
    span: SourceSpan = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class ImportDecl:
    qualified_name: str
    span: SourceSpan = field(default=NO_SPAN, compare=False)

    @property
    def local_name(self) -> str:
        return self.qualified_name.rsplit(".", 1)[-1]


@dataclass(frozen=True)
class Specification:
    """One parsed compilation unit."""

    imports: Tuple[ImportDecl, ...] = ()
    types: Tuple[Union[Structure, Enumeration], ...] = ()
    entities: Tuple[EntityClass, ...] = ()
    contexts: Tuple[ContextOperator, ...] = ()
    controllers: Tuple[ControlOperator, ...] = ()

    def entity(self, name: str) -> Optional[EntityClass]:
        return next((e for e in self.entities if e.name == name), None)

    def context(self, name: str) -> Optional[ContextOperator]:
        return next((c for c in self.contexts if c.name == name), None)

    def controller(self, name: str) -> Optional[ControlOperator]:
        return next((c for c in self.controllers if c.name == name), None)

    def declared_type(self, name: str) -> Optional[Union[Structure, Enumeration]]:
        return next((t for t in self.types if t.name == name), None)

    @property
    def is_empty(self) -> bool:
        return not (self.imports or self.types or self.entities
                    or self.contexts or self.controllers)


def iter_identifiers(spec: Specification):
    """Yield every identifier reachable from the specification."""
    for imp in spec.imports:
        yield from imp.qualified_name.split(".")
    for t in spec.types:
        yield t.name
        if isinstance(t, Enumeration):
            yield from t.labels
        else:
            for fname, ftype in t.fields:
                yield fname
                yield from _type_identifiers(ftype)
    for e in spec.entities:
        yield e.name
        for a in e.attributes:
            yield a.name
            yield from _type_identifiers(a.type)
        for s in e.sources:
            yield s.name
            yield from _type_identifiers(s.type)
        for act in e.actions:
            yield act.name
            for pname, ptype in act.params:
                yield pname
                yield from _type_identifiers(ptype)
    for c in spec.contexts:
        yield c.name
        yield from _type_identifiers(c.output_type)
        for inp in c.inputs:
            if isinstance(inp, SourceInput):
                yield inp.source_name
                yield inp.entity_class
            else:
                yield inp.context_name
    for ctl in spec.controllers:
        yield ctl.name
        for inp in ctl.inputs:
            yield inp.context_name
        for ab in ctl.action_bindings:
            yield ab.action_name
            yield ab.entity_class


def _type_identifiers(t: DataType):
    if isinstance(t, ArrayOf):
        yield from _type_identifiers(t.element)
    elif isinstance(t, (Enumeration, Structure, NamedRef)):
        yield t.name
    elif isinstance(t, Imported):
        yield from t.qualified_name.split(".")
