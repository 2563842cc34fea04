"""Parser tests: grammar coverage, diagnostics, round-trip and totality."""

import pytest
from hypothesis import example, given, settings, strategies as st

from scclang.model import (
    ActionBinding, ActionSig, ArrayOf, AttributeDecl, BOOLEAN, ContextInput,
    ContextOperator, ControlOperator, EntityClass, Enumeration, FLOAT,
    ImportDecl, INTEGER, Interaction, NamedRef, SourceDecl, SourceInput,
    Specification, STRING, Structure,
)
from scclang.parser import KEYWORDS, ParseResult, Severity, parse, pretty_print
from scclang.parser import parse_file
from tests.conftest import ROBOT_DESIGN


def ok(text: str) -> Specification:
    result = parse(text)
    assert result.ok, [str(d) for d in result.diagnostics]
    return result.spec


def bad(text: str) -> ParseResult:
    result = parse(text)
    assert not result.ok
    assert result.spec is None
    assert any(d.severity is Severity.ERROR for d in result.diagnostics)
    return result


def test_vector3_structure_from_the_design_language():
    spec = ok("structure Vector3 { x as Float; y as Float; z as Float; }")
    assert spec.types == (Structure("Vector3", (
        ("x", FLOAT), ("y", FLOAT), ("z", FLOAT))),)
    # Nominal equality: the declaration round-trips through its fields too.
    decl = spec.types[0]
    assert decl.fields == (("x", FLOAT), ("y", FLOAT), ("z", FLOAT))


def test_empty_input_gives_empty_specification():
    spec = ok("")
    assert spec == Specification()
    assert spec.is_empty


def test_entity_with_array_source():
    spec = ok("entity LaserScan { source ranges as Float[]; }")
    assert spec.entities == (EntityClass(
        "LaserScan", sources=(SourceDecl("ranges", ArrayOf(FLOAT)),)),)


def test_missing_type_is_an_error_with_span():
    result = bad("structure Twist { linear as Vector3; angular as }")
    diag = next(d for d in result.diagnostics if d.severity is Severity.ERROR)
    assert "expected a type" in diag.message
    assert diag.span.start_line == 1
    assert diag.span.start_col == 49  # points at the '}'


def test_enumeration():
    spec = ok("enumeration Mode { RANDOM, EXPLORATION }")
    assert spec.types == (Enumeration("Mode", ("RANDOM", "EXPLORATION")),)


def test_import_qualified_name():
    spec = ok("import geometry.msgs.Twist;")
    assert spec.imports == (ImportDecl("geometry.msgs.Twist"),)
    assert spec.imports[0].local_name == "Twist"


def test_context_with_pull_and_push_inputs():
    spec = ok("""
        context Fusion as Float {
          source ranges from LaserScan pull;
          context Odometry;
        }
    """)
    ctx = spec.contexts[0]
    assert ctx.inputs == (
        SourceInput("ranges", "LaserScan", Interaction.PULL),
        ContextInput("Odometry", Interaction.PUSH),
    )


def test_controller_shape():
    spec = ok("""
        controller C {
          context Motion;
          action Roll on Wheel;
        }
    """)
    ctl = spec.controllers[0]
    assert ctl.inputs == (ContextInput("Motion"),)
    assert ctl.action_bindings == (ActionBinding("Roll", "Wheel"),)


def test_action_with_parameters():
    spec = ok("entity W { action Move(dx as Float, n as Integer); }")
    assert spec.entities[0].actions == (ActionSig(
        "Move", (("dx", FLOAT), ("n", INTEGER))),)


def test_attribute_declaration():
    spec = ok("entity Cam { attribute resolution as Integer; source p as Float; }")
    assert spec.entities[0].attributes == (AttributeDecl("resolution", INTEGER),)


def test_reserved_word_rejected_as_identifier():
    result = bad("entity entity { }")
    assert any("reserved word" in d.message for d in result.diagnostics)


def test_duplicate_declarations_parse_fine():
    # Uniqueness is the analyzer's business; the parser stays context-free.
    spec = ok("entity A { source s as Float; } entity A { source s as Float; }")
    assert len(spec.entities) == 2


def test_multiple_errors_reported_in_one_pass():
    result = bad("structure S { x as ; }\nentity E { source as Float; }")
    errors = [d for d in result.diagnostics if d.severity is Severity.ERROR]
    assert len(errors) >= 2


def test_line_comments_are_ignored():
    spec = ok("// a comment\nentity A { // inline\n source s as Float; }\n")
    assert spec.entities[0].name == "A"


def test_diagnostic_string_format():
    result = bad("structure ; { }")
    diag = result.diagnostics[0]
    assert str(diag).startswith("<input>:1:11: error: ")


def test_stray_bytes_never_crash():
    for blob in (b"\x00\x01\x02", b"entity \xff{", b"}}}}{{{", b"@#$%^&*"):
        result = parse(blob.decode("utf-8", errors="replace"))
        assert result.spec is None or result.ok


def test_case_study_parses(robot_spec):
    assert len(robot_spec.entities) == 6
    assert len(robot_spec.contexts) == 4
    assert len(robot_spec.controllers) == 2
    assert len(robot_spec.types) == 4


# -- pretty printer ------------------------------------------------------------


def test_pretty_empty_is_empty_string():
    assert pretty_print(Specification()) == ""


def test_pretty_twist_matches_design_language_spelling():
    spec = ok("structure Twist { linear as Vector3; angular as Vector3; }")
    text = pretty_print(spec)
    assert "linear as Vector3; angular as Vector3;" in text


def test_pretty_roundtrip_case_study(robot_spec):
    text = pretty_print(robot_spec)
    again = parse(text, "pretty")
    assert again.ok
    assert again.spec == robot_spec
    # one round trip reaches the fixpoint
    assert pretty_print(again.spec) == text


def test_top_level_span_covers_declaration(robot_spec):
    with open(ROBOT_DESIGN, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    decls = (list(robot_spec.types) + list(robot_spec.entities)
             + list(robot_spec.contexts) + list(robot_spec.controllers))
    keywords = ("structure", "enumeration", "entity", "context", "controller")
    for decl in decls:
        span = decl.span
        fragment = lines[span.start_line - 1][span.start_col - 1:] if \
            span.start_line == span.end_line else \
            lines[span.start_line - 1][span.start_col - 1:]
        assert fragment.startswith(keywords) or \
            fragment.split()[0] in keywords
        last = lines[span.end_line - 1][:span.end_col]
        assert last.rstrip().endswith("}")


# -- property tests ------------------------------------------------------------

_ident = st.from_regex(r"[A-Za-z][A-Za-z0-9_]{0,7}", fullmatch=True).filter(
    lambda s: s not in KEYWORDS)

_primitive = st.sampled_from([BOOLEAN, INTEGER, FLOAT, STRING])


def _types(depth=2):
    base = st.one_of(_primitive, _ident.map(NamedRef))
    if depth == 0:
        return base
    return st.one_of(base, _types(depth - 1).map(ArrayOf))


_type = _types()

_struct = st.builds(
    lambda name, fields: Structure(name, tuple(fields)),
    _ident, st.lists(st.tuples(_ident, _type), min_size=1, max_size=3))

_enum = st.builds(
    lambda name, labels: Enumeration(name, tuple(labels)),
    _ident, st.lists(_ident, min_size=1, max_size=3))

_entity = st.builds(
    lambda name, attrs, sources, actions: EntityClass(
        name,
        tuple(AttributeDecl(n, t) for n, t in attrs),
        tuple(SourceDecl(n, t) for n, t in sources),
        tuple(ActionSig(n, tuple(ps)) for n, ps in actions)),
    _ident,
    st.lists(st.tuples(_ident, _type), max_size=2),
    st.lists(st.tuples(_ident, _type), max_size=2),
    st.lists(st.tuples(_ident, st.lists(st.tuples(_ident, _type), max_size=2)),
             max_size=2))

_interaction = st.sampled_from([Interaction.PUSH, Interaction.PULL])

_input = st.one_of(
    st.builds(SourceInput, _ident, _ident, _interaction),
    st.builds(ContextInput, _ident, _interaction))

_context = st.builds(
    lambda name, out, inputs: ContextOperator(name, out, tuple(inputs)),
    _ident, _type, st.lists(_input, min_size=1, max_size=3))

_controller = st.builds(
    lambda name, inputs, bindings: ControlOperator(
        name, tuple(ContextInput(i) for i in inputs),
        tuple(ActionBinding(a, e) for a, e in bindings)),
    _ident, st.lists(_ident, min_size=1, max_size=2),
    st.lists(st.tuples(_ident, _ident), min_size=1, max_size=2))

_specification = st.builds(
    lambda imports, types, entities, contexts, controllers: Specification(
        tuple(ImportDecl(".".join(i)) for i in imports),
        tuple(types), tuple(entities), tuple(contexts), tuple(controllers)),
    st.lists(st.lists(_ident, min_size=1, max_size=3), max_size=2),
    st.lists(st.one_of(_struct, _enum), max_size=3),
    st.lists(_entity, max_size=3),
    st.lists(_context, max_size=3),
    st.lists(_controller, max_size=2))


@settings(max_examples=150, deadline=None)
@given(_specification)
def test_roundtrip_any_wellformed_spec(spec):
    text = pretty_print(spec)
    result = parse(text, "roundtrip")
    assert result.ok, [str(d) for d in result.diagnostics] + [text]
    assert result.spec == spec


@settings(max_examples=300, deadline=None)
@given(st.text(max_size=200))
@example("entity A {")
@example("structure { } } }")
@example("﻿import ;;;")
def test_parse_is_total_on_text(text):
    result = parse(text)
    assert (result.spec is None) == any(
        d.severity is Severity.ERROR for d in result.diagnostics)


@settings(max_examples=200, deadline=None)
@given(st.binary(max_size=200))
def test_parse_is_total_on_bytes(blob):
    parse(blob.decode("utf-8", errors="replace"))
