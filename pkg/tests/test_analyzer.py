"""Analyzer tests: layering rules R1-R8, component graph, DOT export."""

import pytest

from scclang.analyzer import CheckResult, check, export_graph
from scclang.model import Specification
from scclang.parser import parse, pretty_print

BASE = """
structure Twist { a as Float; b as Float; }
entity LaserScan { source ranges as Float[]; }
entity Wheel { action Roll(twist as Twist); }
context Obstacles as Boolean { source ranges from LaserScan; }
controller Drive { context Obstacles; action Roll on Wheel; }
"""


def check_text(text: str) -> CheckResult:
    result = parse(text, "test.scc")
    assert result.ok, [str(d) for d in result.diagnostics]
    return check(result.spec)


def sole_rule(result: CheckResult) -> str:
    assert not result.ok
    rules = {v.rule_id for v in result.violations}
    assert len(rules) == 1, [str(v) for v in result.violations]
    return rules.pop()


def test_clean_base_design_accepted():
    result = check_text(BASE)
    assert result.ok
    assert result.violations == ()


def test_r1_controller_consuming_an_entity():
    text = BASE + "controller Bad { context LaserScan; action Roll on Wheel; }"
    result = check_text(text)
    assert sole_rule(result) == "R1"


def test_r2_context_consuming_an_entity_as_context():
    text = BASE + "context Bad as Boolean { context Wheel; }"
    result = check_text(text)
    assert sole_rule(result) == "R2"


def test_r3_entity_with_neither_sources_nor_actions():
    text = BASE + "entity Useless { attribute x as Float; }"
    result = check_text(text)
    assert sole_rule(result) == "R3"


def test_r4_two_contexts_in_a_cycle():
    text = BASE + """
    context A as Boolean { context B; }
    context B as Boolean { context A; }
    """
    result = check_text(text)
    assert sole_rule(result) == "R4"


def test_r4_self_loop():
    text = BASE + "context Selfish as Boolean { context Selfish; }"
    result = check_text(text)
    assert sole_rule(result) == "R4"


def test_r5_unresolved_type_name():
    text = BASE + "context Motion as Pose { context Obstacles; }"
    result = check_text(text)
    assert sole_rule(result) == "R5"


def test_r5_entity_used_as_a_type():
    text = BASE + "context Motion as Wheel { context Obstacles; }"
    result = check_text(text)
    assert sole_rule(result) == "R5"


def test_r6_duplicate_top_level_names():
    text = BASE + "entity LaserScan { source other as Float; }"
    result = check_text(text)
    assert sole_rule(result) == "R6"


def test_r6_duplicate_member_names():
    text = BASE + "entity Cam { source p as Float; source p as Integer; }"
    result = check_text(text)
    assert sole_rule(result) == "R6"


def test_r7_missing_source_on_entity():
    text = BASE + "context Bad as Boolean { source missing from LaserScan; }"
    result = check_text(text)
    assert sole_rule(result) == "R7"


def test_r7_source_from_undeclared_entity():
    text = BASE + "context Bad as Boolean { source s from Ghost; }"
    result = check_text(text)
    assert sole_rule(result) == "R7"


def test_r8_missing_action_on_entity():
    text = BASE + "controller Bad { context Obstacles; action Fly on Wheel; }"
    result = check_text(text)
    assert sole_rule(result) == "R8"


def test_r8_action_on_undeclared_entity():
    text = BASE + "controller Bad { context Obstacles; action Roll on Ghost; }"
    result = check_text(text)
    assert sole_rule(result) == "R8"


def test_all_violations_reported_in_one_pass():
    text = """
    entity Useless { }
    context A as Ghost { context B; }
    context B as Boolean { context A; }
    """
    result = check_text(text)
    rules = sorted(v.rule_id for v in result.violations)
    assert "R3" in rules and "R4" in rules and "R5" in rules


def test_violations_ordered_by_span():
    text = """
    entity Useless { }
    context Bad as Ghost { context Missing; }
    """
    result = check_text(text)
    spans = [(v.span.start_line, v.span.start_col) for v in result.violations]
    assert spans == sorted(spans)


def test_violation_string_format():
    result = check_text(BASE + "context Bad as Ghost { context Obstacles; }")
    violation = result.violations[0]
    assert "error[R5]" in str(violation)
    assert str(violation).startswith("test.scc:")


def test_unused_entity_is_a_warning_not_an_error():
    result = check_text(BASE + "entity Spare { source s as Float; }")
    assert result.ok
    assert any("never referenced" in str(w) for w in result.warnings)


def test_pull_edges_respect_layering_and_cycles():
    text = BASE + """
    context P as Boolean { context Q pull; }
    context Q as Boolean { context P pull; }
    """
    result = check_text(text)
    assert sole_rule(result) == "R4"


def test_check_is_deterministic():
    text = BASE + "entity Useless { }\ncontext Z as Ghost { context Nope; }"
    first = check_text(text)
    second = check_text(text)
    assert [str(v) for v in first.violations] == \
        [str(v) for v in second.violations]


# -- case study and graph -------------------------------------------------------

CASE_STUDY_EDGES = {
    (("source", "LaserScan", "ranges"), ("context", "ObstacleDetection")),
    (("context", "ObstacleDetection"), ("context", "RandomMotion")),
    (("context", "ObstacleDetection"), ("context", "ObstacleZone")),
    (("context", "RandomMotion"), ("context", "Motion")),
    (("source", "Exploration", "twist"), ("context", "Motion")),
    (("source", "ModeSelector", "mode"), ("context", "Motion")),
    (("context", "Motion"), ("controller", "MotionController")),
    (("controller", "MotionController"), ("action", "Wheel", "Roll")),
    (("context", "ObstacleZone"), ("controller", "ObstacleManager")),
    (("controller", "ObstacleManager"), ("action", "Light", "On")),
    (("controller", "ObstacleManager"), ("action", "Light", "Off")),
    (("controller", "ObstacleManager"), ("action", "Camera", "TakePicture")),
}


def test_case_study_component_graph(robot_checked):
    assert set(robot_checked.edges) == CASE_STUDY_EDGES
    names = set(robot_checked.component_names)
    assert names == {"LaserScan", "ModeSelector", "Exploration", "Light",
                     "Camera", "Wheel", "ObstacleDetection", "RandomMotion",
                     "ObstacleZone", "Motion", "MotionController",
                     "ObstacleManager"}


def test_case_study_type_resolution(robot_checked):
    out = robot_checked.output_type("Motion")
    assert out.name == "Twist"
    ranges = robot_checked.source_type("LaserScan", "ranges")
    from scclang.model import ArrayOf, FLOAT
    assert ranges == ArrayOf(FLOAT)


def test_context_topological_order_exists(robot_checked):
    # R4 guarantees a DAG on the context layer.
    contexts = [c.name for c in robot_checked.spec.contexts]
    deps = {name: set() for name in contexts}
    for src, dst in robot_checked.edges:
        if src[0] == "context" and dst[0] == "context":
            deps[dst[1]].add(src[1])
    order = []
    while deps:
        ready = sorted(n for n, d in deps.items() if not d)
        assert ready, "cycle found"
        for n in ready:
            del deps[n]
            order.append(n)
        for d in deps.values():
            d.difference_update(ready)
    assert len(order) == len(contexts)


def test_dot_single_entity():
    result = check_text("entity Solo { source s as Float; }")
    dot = export_graph(result.checked)
    assert dot.count("[shape=box]") == 1
    assert "->" not in dot


def test_dot_case_study_nodes_and_edges(robot_checked):
    dot = export_graph(robot_checked)
    node_lines = [l for l in dot.splitlines() if "[shape=" in l]
    assert len(node_lines) == 12  # one node per design component
    edge_lines = [l for l in dot.splitlines() if "->" in l]
    assert len(edge_lines) == 11  # component-level edges of the case study
    assert '"LaserScan" -> "ObstacleDetection" [label="ranges"];' in dot


def test_dot_deterministic(robot_checked):
    assert export_graph(robot_checked) == export_graph(robot_checked)


def test_monotonicity_removal_only_dangles(robot_spec):
    """Removing any one declaration introduces only dangling-reference
    violations (R1/R2/R5/R7/R8), never new cycles or duplicates."""
    dangling = {"R1", "R2", "R5", "R7", "R8"}
    spec = robot_spec
    for kind in ("types", "entities", "contexts", "controllers"):
        items = getattr(spec, kind)
        for drop in range(len(items)):
            reduced = Specification(
                imports=spec.imports,
                types=tuple(t for i, t in enumerate(spec.types)
                            if kind != "types" or i != drop),
                entities=tuple(e for i, e in enumerate(spec.entities)
                               if kind != "entities" or i != drop),
                contexts=tuple(c for i, c in enumerate(spec.contexts)
                               if kind != "contexts" or i != drop),
                controllers=tuple(c for i, c in enumerate(spec.controllers)
                                  if kind != "controllers" or i != drop),
            )
            result = check(reduced)
            for violation in result.violations:
                assert violation.rule_id in dangling, str(violation)


def test_checked_spec_roundtrips_through_pretty_printer(robot_checked):
    text = pretty_print(robot_checked.spec)
    again = check(parse(text).spec)
    assert again.ok
    assert set(again.checked.edges) == set(robot_checked.edges)
