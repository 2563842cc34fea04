"""Parser and pretty printer for the ``.scc`` design language.

Grammar (EBNF, ``//`` line comments, declarations semicolon-terminated):

    unit        := (import | typedecl | entity | context | controller)*
    import      := "import" qualifiedName ";"
    typedecl    := "structure" Id "{" (Id "as" type ";")+ "}"
                 | "enumeration" Id "{" Id ("," Id)* "}"
    entity      := "entity" Id "{" (attribute|source|action)* "}"
    attribute   := "attribute" Id "as" type ";"
    source      := "source" Id "as" type ";"
    action      := "action" Id "(" [Id "as" type ("," Id "as" type)*] ")" ";"
    context     := "context" Id "as" type "{" input+ "}"
    input       := "source" Id "from" Id ["pull"] ";"
                 | "context" Id ["pull"] ";"
    controller  := "controller" Id "{" ("context" Id ";")+ ("action" Id "on" Id ";")+ "}"
    type        := "Boolean"|"Integer"|"Float"|"String"|Id|type "[]"

Interaction defaults to push; ``pull`` opts a binding into
request/response.  Reserved words may not be used as identifiers.
Duplicate declarations parse fine (the analyzer rejects them); the
parser is total: any byte sequence yields either a specification or a
diagnostic list, never an exception.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

from .model import (
    ActionBinding, ActionSig, ArrayOf, AttributeDecl, BOOLEAN, ContextInput,
    ContextOperator, ControlOperator, EntityClass, Enumeration, FLOAT,
    ImportDecl, INTEGER, Interaction, NamedRef, Primitive, PrimitiveKind,
    SourceDecl, SourceInput, SourceSpan, Specification, STRING, Structure,
    DataType,
)

KEYWORDS = frozenset({
    "import", "structure", "enumeration", "entity", "attribute", "source",
    "action", "context", "controller", "as", "from", "on", "pull",
    "Boolean", "Integer", "Float", "String",
})

PRIMITIVES = {
    "Boolean": BOOLEAN,
    "Integer": INTEGER,
    "Float": FLOAT,
    "String": STRING,
}

_PUNCT = {"{", "}", "(", ")", ";", ",", ".", "[]"}


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class ParseDiagnostic:
    span: SourceSpan
    message: str
    severity: Severity = Severity.ERROR

    def __str__(self) -> str:
        return f"{self.span}: {self.severity.value}: {self.message}"


@dataclass(frozen=True)
class ParseResult:
    """Either a specification or the diagnostics explaining why not.

    ``spec`` is None exactly when at least one error diagnostic exists.
    """

    spec: Optional[Specification]
    diagnostics: Tuple[ParseDiagnostic, ...] = ()

    @property
    def ok(self) -> bool:
        return self.spec is not None


@dataclass(frozen=True)
class _Token:
    kind: str          # "id", "keyword", "punct", "error", "eof"
    text: str
    line: int
    col: int
    end_line: int
    end_col: int

    def span(self, file: str) -> SourceSpan:
        return SourceSpan(file, self.line, self.col, self.end_line, self.end_col)


def _lex(text: str, file: str) -> Tuple[List[_Token], List[ParseDiagnostic]]:
    tokens: List[_Token] = []
    diags: List[ParseDiagnostic] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "/" and i + 1 < n and text[i + 1] == "/":
            while i < n and text[i] != "\n":
                i += 1
                col += 1
            continue
        start_line, start_col = line, col
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            col += j - i
            i = j
            kind = "keyword" if word in KEYWORDS else "id"
            tokens.append(_Token(kind, word, start_line, start_col, line, col - 1))
            continue
        if ch == "[" and i + 1 < n and text[i + 1] == "]":
            tokens.append(_Token("punct", "[]", start_line, start_col, line, col + 1))
            i += 2
            col += 2
            continue
        if ch in "{}();,.":
            tokens.append(_Token("punct", ch, start_line, start_col, line, col))
            i += 1
            col += 1
            continue
        # Anything else is a stray character; report once and skip it.
        diags.append(ParseDiagnostic(
            SourceSpan(file, start_line, start_col, line, col),
            f"unexpected character {ch!r}"))
        i += 1
        col += 1
    tokens.append(_Token("eof", "", line, col, line, col))
    return tokens, diags


class _Parser:
    """Recursive descent with panic-mode recovery at declaration keywords."""

    SYNC = {"import", "structure", "enumeration", "entity", "context", "controller"}

    def __init__(self, tokens: List[_Token], file: str,
                 diagnostics: List[ParseDiagnostic]):
        self.tokens = tokens
        self.file = file
        self.pos = 0
        self.diags = diagnostics

    # -- token plumbing ----------------------------------------------------

    @property
    def cur(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.cur
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at(self, text: str) -> bool:
        return self.cur.text == text and self.cur.kind in ("keyword", "punct")

    def error(self, message: str, tok: Optional[_Token] = None) -> None:
        tok = tok or self.cur
        self.diags.append(ParseDiagnostic(tok.span(self.file), message))

    def expect(self, text: str, what: str = "") -> Optional[_Token]:
        if self.at(text):
            return self.advance()
        found = repr(self.cur.text) if self.cur.kind != "eof" else "end of file"
        self.error(f"expected {what or text!r}, found {found}")
        return None

    def expect_id(self, what: str = "identifier") -> Optional[_Token]:
        if self.cur.kind == "id":
            return self.advance()
        if self.cur.kind == "keyword":
            self.error(f"reserved word {self.cur.text!r} may not be used as {what}")
        else:
            found = repr(self.cur.text) if self.cur.kind != "eof" else "end of file"
            self.error(f"expected {what}, found {found}")
        return None

    def recover(self) -> None:
        """Skip to the next top-level declaration keyword (or EOF)."""
        depth = 0
        while self.cur.kind != "eof":
            if self.cur.text == "{":
                depth += 1
            elif self.cur.text == "}":
                if depth > 0:
                    depth -= 1
                    self.advance()
                    if depth == 0:
                        return
                    continue
                else:
                    self.advance()
                    return
            elif depth == 0 and self.cur.text in self.SYNC and self.cur.kind == "keyword":
                return
            self.advance()

    def span_from(self, start: _Token, end: _Token) -> SourceSpan:
        return SourceSpan(self.file, start.line, start.col, end.end_line, end.end_col)

    # -- grammar -----------------------------------------------------------

    def parse_unit(self) -> Specification:
        imports, types, entities, contexts, controllers = [], [], [], [], []
        while self.cur.kind != "eof":
            tok = self.cur
            pos_before = self.pos
            if self.at("import"):
                node = self.parse_import()
                if node:
                    imports.append(node)
            elif self.at("structure"):
                node = self.parse_structure()
                if node:
                    types.append(node)
            elif self.at("enumeration"):
                node = self.parse_enumeration()
                if node:
                    types.append(node)
            elif self.at("entity"):
                node = self.parse_entity()
                if node:
                    entities.append(node)
            elif self.at("context"):
                node = self.parse_context()
                if node:
                    contexts.append(node)
            elif self.at("controller"):
                node = self.parse_controller()
                if node:
                    controllers.append(node)
            else:
                self.error(
                    "expected a declaration (import, structure, enumeration, "
                    f"entity, context or controller), found {tok.text!r}")
                self.recover()
            if self.pos == pos_before and self.cur.kind != "eof":
                # Defensive: guarantee progress on any byte sequence.
                self.advance()
        return Specification(
            imports=tuple(imports), types=tuple(types), entities=tuple(entities),
            contexts=tuple(contexts), controllers=tuple(controllers))

    def parse_import(self) -> Optional[ImportDecl]:
        start = self.advance()
        first = self.expect_id("an imported name")
        if not first:
            self.recover()
            return None
        parts = [first.text]
        last = first
        while self.at("."):
            self.advance()
            seg = self.expect_id("a name segment after '.'")
            if not seg:
                self.recover()
                return None
            parts.append(seg.text)
            last = seg
        end = self.expect(";") or last
        return ImportDecl(".".join(parts), self.span_from(start, end))

    def parse_type(self) -> Optional[DataType]:
        tok = self.cur
        base: Optional[DataType]
        if tok.kind == "keyword" and tok.text in PRIMITIVES:
            self.advance()
            base = Primitive(PRIMITIVES[tok.text].kind, tok.span(self.file))
        elif tok.kind == "id":
            self.advance()
            base = NamedRef(tok.text, tok.span(self.file))
        else:
            found = repr(tok.text) if tok.kind != "eof" else "end of file"
            self.error(f"expected a type (Boolean, Integer, Float, String or a "
                       f"declared name), found {found}")
            return None
        while self.at("[]"):
            suffix = self.advance()
            base = ArrayOf(base, self.span_from(tok, suffix))
        return base

    def parse_structure(self) -> Optional[Structure]:
        start = self.advance()
        name = self.expect_id("a structure name")
        if not name or not self.expect("{"):
            self.recover()
            return None
        fields: List[Tuple[str, DataType]] = []
        while not self.at("}") and self.cur.kind != "eof":
            fname = self.expect_id("a field name")
            if not fname or not self.expect("as"):
                self.recover()
                return None
            ftype = self.parse_type()
            if ftype is None or not self.expect(";"):
                self.recover()
                return None
            fields.append((fname.text, ftype))
        end = self.expect("}")
        if end is None:
            return None
        if not fields:
            self.error("structure must declare at least one field", start)
            return None
        return Structure(name.text, tuple(fields), self.span_from(start, end))

    def parse_enumeration(self) -> Optional[Enumeration]:
        start = self.advance()
        name = self.expect_id("an enumeration name")
        if not name or not self.expect("{"):
            self.recover()
            return None
        labels: List[str] = []
        label = self.expect_id("a label")
        if not label:
            self.recover()
            return None
        labels.append(label.text)
        while self.at(","):
            self.advance()
            label = self.expect_id("a label")
            if not label:
                self.recover()
                return None
            labels.append(label.text)
        end = self.expect("}")
        if end is None:
            self.recover()
            return None
        return Enumeration(name.text, tuple(labels), self.span_from(start, end))

    def parse_entity(self) -> Optional[EntityClass]:
        start = self.advance()
        name = self.expect_id("an entity class name")
        if not name or not self.expect("{"):
            self.recover()
            return None
        attributes: List[AttributeDecl] = []
        sources: List[SourceDecl] = []
        actions: List[ActionSig] = []
        while not self.at("}") and self.cur.kind != "eof":
            if self.at("attribute"):
                member = self.advance()
                mname = self.expect_id("an attribute name")
                if not mname or not self.expect("as"):
                    self.recover()
                    return None
                mtype = self.parse_type()
                if mtype is None:
                    self.recover()
                    return None
                end = self.expect(";") or mname
                attributes.append(AttributeDecl(mname.text, mtype,
                                                self.span_from(member, end)))
            elif self.at("source"):
                member = self.advance()
                mname = self.expect_id("a source name")
                if not mname or not self.expect("as"):
                    self.recover()
                    return None
                mtype = self.parse_type()
                if mtype is None:
                    self.recover()
                    return None
                end = self.expect(";") or mname
                sources.append(SourceDecl(mname.text, mtype,
                                          self.span_from(member, end)))
            elif self.at("action"):
                member = self.advance()
                mname = self.expect_id("an action name")
                if not mname or not self.expect("("):
                    self.recover()
                    return None
                params: List[Tuple[str, DataType]] = []
                if not self.at(")"):
                    while True:
                        pname = self.expect_id("a parameter name")
                        if not pname or not self.expect("as"):
                            self.recover()
                            return None
                        ptype = self.parse_type()
                        if ptype is None:
                            self.recover()
                            return None
                        params.append((pname.text, ptype))
                        if self.at(","):
                            self.advance()
                            continue
                        break
                if not self.expect(")"):
                    self.recover()
                    return None
                end = self.expect(";") or mname
                actions.append(ActionSig(mname.text, tuple(params),
                                         self.span_from(member, end)))
            else:
                self.error("expected attribute, source or action "
                           f"declaration, found {self.cur.text!r}")
                self.recover()
                return None
        end = self.expect("}")
        if end is None:
            return None
        return EntityClass(name.text, tuple(attributes), tuple(sources),
                           tuple(actions), self.span_from(start, end))

    def parse_context(self) -> Optional[ContextOperator]:
        start = self.advance()
        name = self.expect_id("a context operator name")
        if not name or not self.expect("as"):
            self.recover()
            return None
        out_type = self.parse_type()
        if out_type is None or not self.expect("{"):
            self.recover()
            return None
        inputs: List = []
        while not self.at("}") and self.cur.kind != "eof":
            if self.at("source"):
                member = self.advance()
                sname = self.expect_id("a source name")
                if not sname or not self.expect("from"):
                    self.recover()
                    return None
                ename = self.expect_id("an entity class name")
                if not ename:
                    self.recover()
                    return None
                interaction = Interaction.PUSH
                if self.at("pull"):
                    self.advance()
                    interaction = Interaction.PULL
                end = self.expect(";") or ename
                inputs.append(SourceInput(sname.text, ename.text, interaction,
                                          self.span_from(member, end)))
            elif self.at("context"):
                member = self.advance()
                cname = self.expect_id("a context name")
                if not cname:
                    self.recover()
                    return None
                interaction = Interaction.PUSH
                if self.at("pull"):
                    self.advance()
                    interaction = Interaction.PULL
                end = self.expect(";") or cname
                inputs.append(ContextInput(cname.text, interaction,
                                           self.span_from(member, end)))
            else:
                self.error("expected a 'source ... from ...' or 'context ...' "
                           f"input, found {self.cur.text!r}")
                self.recover()
                return None
        end = self.expect("}")
        if end is None:
            return None
        if not inputs:
            self.error("context operator must declare at least one input", start)
            return None
        return ContextOperator(name.text, out_type, tuple(inputs),
                               self.span_from(start, end))

    def parse_controller(self) -> Optional[ControlOperator]:
        start = self.advance()
        name = self.expect_id("a controller name")
        if not name or not self.expect("{"):
            self.recover()
            return None
        inputs: List[ContextInput] = []
        bindings: List[ActionBinding] = []
        while self.at("context"):
            member = self.advance()
            cname = self.expect_id("a context name")
            if not cname:
                self.recover()
                return None
            end = self.expect(";") or cname
            inputs.append(ContextInput(cname.text, Interaction.PUSH,
                                       self.span_from(member, end)))
        while self.at("action"):
            member = self.advance()
            aname = self.expect_id("an action name")
            if not aname or not self.expect("on"):
                self.recover()
                return None
            ename = self.expect_id("an entity class name")
            if not ename:
                self.recover()
                return None
            end = self.expect(";") or ename
            bindings.append(ActionBinding(aname.text, ename.text,
                                          self.span_from(member, end)))
        end = self.expect("}")
        if end is None:
            self.recover()
            return None
        if not inputs:
            self.error("controller must consume at least one context", start)
            return None
        if not bindings:
            self.error("controller must bind at least one action", start)
            return None
        return ControlOperator(name.text, tuple(inputs), tuple(bindings),
                               self.span_from(start, end))


def parse(text: str, file: str = "<input>") -> ParseResult:
    """Parse DSL text; never raises, whatever the input bytes."""
    tokens, diags = _lex(text, file)
    parser = _Parser(tokens, file, diags)
    spec = parser.parse_unit()
    errors = tuple(d for d in parser.diags if d.severity is Severity.ERROR)
    if errors:
        return ParseResult(None, tuple(parser.diags))
    return ParseResult(spec, tuple(parser.diags))


def parse_file(path: str) -> ParseResult:
    with open(path, "r", encoding="utf-8", errors="replace") as fh:
        return parse(fh.read(), file=str(path))


# -- pretty printer ---------------------------------------------------------

def _fmt_type(t: DataType) -> str:
    from .model import type_name
    return type_name(t)


def _fmt_structure(s: Structure) -> str:
    fields = " ".join(f"{n} as {_fmt_type(t)};" for n, t in s.fields)
    return f"structure {s.name} {{ {fields} }}"


def _fmt_enumeration(e: Enumeration) -> str:
    return f"enumeration {e.name} {{ {', '.join(e.labels)} }}"


def _fmt_entity(e: EntityClass) -> str:
    lines = [f"entity {e.name} {{"]
    for a in e.attributes:
        lines.append(f"  attribute {a.name} as {_fmt_type(a.type)};")
    for s in e.sources:
        lines.append(f"  source {s.name} as {_fmt_type(s.type)};")
    for act in e.actions:
        params = ", ".join(f"{n} as {_fmt_type(t)}" for n, t in act.params)
        lines.append(f"  action {act.name}({params});")
    lines.append("}")
    return "\n".join(lines)


def _fmt_context(c: ContextOperator) -> str:
    lines = [f"context {c.name} as {_fmt_type(c.output_type)} {{"]
    for inp in c.inputs:
        pull = " pull" if inp.interaction is Interaction.PULL else ""
        if isinstance(inp, SourceInput):
            lines.append(f"  source {inp.source_name} from {inp.entity_class}{pull};")
        else:
            lines.append(f"  context {inp.context_name}{pull};")
    lines.append("}")
    return "\n".join(lines)


def _fmt_controller(c: ControlOperator) -> str:
    lines = [f"controller {c.name} {{"]
    for inp in c.inputs:
        lines.append(f"  context {inp.context_name};")
    for ab in c.action_bindings:
        lines.append(f"  action {ab.action_name} on {ab.entity_class};")
    lines.append("}")
    return "\n".join(lines)


def pretty_print(spec: Specification) -> str:
    """Canonical text form; re-parsing yields an equal specification.

    Empty specification prints as the empty string.  Output groups
    declarations by kind in model order, which is also the only order
    the model can represent.
    """
    blocks: List[str] = []
    for imp in spec.imports:
        blocks.append(f"import {imp.qualified_name};")
    for t in spec.types:
        blocks.append(_fmt_structure(t) if isinstance(t, Structure)
                      else _fmt_enumeration(t))
    for e in spec.entities:
        blocks.append(_fmt_entity(e))
    for c in spec.contexts:
        blocks.append(_fmt_context(c))
    for ctl in spec.controllers:
        blocks.append(_fmt_controller(ctl))
    if not blocks:
        return ""
    return "\n\n".join(blocks) + "\n"
