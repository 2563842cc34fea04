"""Generator tests: determinism, naming contract, manifest completeness,
restrictiveness, regeneration safety and the scaffold option."""

import ast
import importlib
import os
import subprocess
import sys
import textwrap

import pytest

from scclang.analyzer import check
from scclang.codegen import (CodegenError, generate, generate_framework,
                             scaffold_stubs, write_framework)
from scclang.parser import parse

PULL_DESIGN = """
entity Ranger { source level as Float; }
entity Sink { action Drop(amount as Float); }
context Watch as Float {
  source level from Ranger pull;
  context Feed;
}
context Feed as Float { source level from Ranger; }
controller Act { context Watch; action Drop on Sink; }
"""


def checked_of(text: str):
    result = parse(text, "gen-test.scc")
    assert result.ok, [str(d) for d in result.diagnostics]
    res = check(result.spec)
    assert res.ok, [str(v) for v in res.violations]
    return res.checked


@pytest.fixture(scope="module")
def robot_framework(robot_checked):
    return generate_framework(robot_checked)


def test_generation_is_deterministic(robot_checked):
    first = generate_framework(robot_checked)
    second = generate_framework(robot_checked)
    assert first.units == second.units
    assert first.manifest == second.manifest


def test_every_component_yields_a_unit(robot_checked, robot_framework):
    paths = {p for p, _ in robot_framework.units}
    for name in robot_checked.component_names:
        assert f"generated/{name}.py" in paths
    assert "generated/deploy.py" in paths
    assert "manifest.json" in paths
    assert len(paths) == len(robot_framework.units)  # unique paths


def test_generated_header_on_every_source_unit(robot_framework):
    for path, text in robot_framework.units:
        if path.endswith(".py"):
            assert text.startswith("# GENERATED — DO NOT EDIT."), path


def test_motion_naming_contract(robot_framework):
    motion = robot_framework.unit("generated/Motion.py")
    for needle in (
        "def onRandomMotion(self, value, pulls):",
        "def onTwist(self, value, pulls):",
        "def onMode(self, value, pulls):",
        "def publishMotion(self, value):",
        "self.discoverExplorationForSubscribe = DiscoveryProxy(",
        "self.discoverModeSelectorForSubscribe = DiscoveryProxy(",
        '{"twist": "subscribeTwist"}',
        '{"mode": "subscribeMode"}',
    ):
        assert needle in motion, needle


def test_controller_gets_action_proxy(robot_framework):
    text = robot_framework.unit("generated/MotionController.py")
    assert "def onMotion(self, value, actions):" in text
    assert "def roll(self, twist):" in text
    assert 'self._component._invoke_action("Wheel", "Roll", (twist,))' in text
    assert "self.wheel = _WheelActions(component)" in text


def test_entity_publish_and_handlers(robot_framework):
    laser = robot_framework.unit("generated/LaserScan.py")
    assert "def publishRanges(self, value):" in laser
    light = robot_framework.unit("generated/Light.py")
    assert "def on(self):" in light
    assert "def off(self):" in light
    camera = robot_framework.unit("generated/Camera.py")
    assert "def takePicture(self):" in camera


def test_deploy_scaffold_contract(robot_framework):
    deploy = robot_framework.unit("generated/deploy.py")
    assert "def deployAll(self" in deploy
    for name in ("LaserScan", "Motion", "ObstacleManager"):
        assert f"def create{name}(self):" in deploy


def test_empty_design_generates_only_the_scaffold():
    framework = generate_framework(checked_of(""))
    paths = sorted(p for p, _ in framework.units)
    assert paths == ["generated/__init__.py", "generated/datatypes.py",
                     "generated/deploy.py", "manifest.json"]
    assert framework.manifest == ()


def test_pull_input_generates_typed_request_proxy_and_provider():
    framework = generate_framework(checked_of(PULL_DESIGN))
    watch = framework.unit("generated/Watch.py")
    assert "def getLevel(self):" in watch
    assert 'self._component._request("Ranger", "level")' in watch
    ranger = framework.unit("generated/Ranger.py")
    assert "def getLevel(self):" in ranger  # abstract provider
    kinds = {(p.component_name, p.kind) for p in framework.manifest}
    assert ("Ranger", "EntitySourceProvider") in kinds
    # Feed consumes the same source by push: no provider requirement twice.
    feed_points = [p for p in framework.manifest
                   if p.component_name == "Feed"]
    assert {p.kind for p in feed_points} == {"ContextCallback",
                                             "DeployFactory"}


def test_callback_name_collision_is_rejected():
    text = """
    entity A { source same as Float; }
    entity B { source same as Float; }
    context C as Float { source same from A; source same from B; }
    """
    with pytest.raises(CodegenError, match="both map to callback"):
        generate_framework(checked_of(text))


def _abstract_members(framework):
    """Parse every generated unit; collect (component, method) for each
    abc.abstractmethod, plus deploy factories."""
    found = set()
    for path, text in framework.units:
        if not path.endswith(".py"):
            continue
        tree = ast.parse(text)
        for node in ast.walk(tree):
            if not isinstance(node, ast.ClassDef):
                continue
            component = node.name.removeprefix("Abstract")
            for item in node.body:
                if not isinstance(item, ast.FunctionDef):
                    continue
                is_abstract = any(
                    (isinstance(d, ast.Attribute) and d.attr == "abstractmethod")
                    or (isinstance(d, ast.Name) and d.id == "abstractmethod")
                    for d in item.decorator_list)
                if is_abstract:
                    args = ", ".join(a.arg for a in item.args.args)
                    found.add((component, f"def {item.name}({args})"))
    return found


def test_manifest_is_exactly_the_abstract_member_set(robot_framework):
    abstract = _abstract_members(robot_framework)
    manifest = {("MainDeploy" if p.kind == "DeployFactory" else
                 p.component_name, p.required_signature)
                for p in robot_framework.manifest}
    # Deploy factories live on AbstractMainDeploy.
    normalized = set()
    for comp, sig in abstract:
        normalized.add((comp, sig))
    expected = set()
    for p in robot_framework.manifest:
        owner = "MainDeploy" if p.kind == "DeployFactory" else p.component_name
        expected.add((owner, p.required_signature))
    assert normalized == expected


def test_manifest_counts(robot_framework):
    kinds = {}
    for p in robot_framework.manifest:
        kinds[p.kind] = kinds.get(p.kind, 0) + 1
    assert kinds == {
        "ContextCallback": 6,      # onRanges, 2x onObstacleDetection, Motion x3
        "ControllerCallback": 2,   # onMotion, onObstacleZone
        "EntityActionHandler": 4,  # roll, on, off, takePicture
        "DeployFactory": 12,
    }


def test_restrictiveness(robot_framework):
    """No publish/subscribe capability beyond the design graph."""
    for name in ("MotionController", "ObstacleManager"):
        text = robot_framework.unit(f"generated/{name}.py")
        assert "publish" not in text
        assert "Discovery" not in text and "subscribe" not in text
    for name in ("LaserScan", "Wheel", "Light", "Camera", "Exploration",
                 "ModeSelector"):
        text = robot_framework.unit(f"generated/{name}.py")
        assert "subscribe" not in text and "Discovery" not in text
        assert "_invoke_action" not in text


def test_written_tree_imports_and_instantiates(tmp_path, robot_checked):
    generate(robot_checked, str(tmp_path))
    assert (tmp_path / "manifest.json").is_file()
    code = textwrap.dedent("""
        import sys
        sys.path.insert(0, sys.argv[1])
        import warnings
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            import generated
        print(len(generated.DESIGN.components))
    """)
    proc = subprocess.run([sys.executable, "-c", code, str(tmp_path)],
                          capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.strip() == "12"


def test_checked_in_case_study_framework_is_fresh(robot_checked):
    """The committed sim/generated tree matches a fresh generation run."""
    from tests.conftest import SIM_DIR
    framework = generate_framework(robot_checked)
    for rel, text in framework.units:
        path = os.path.join(SIM_DIR, rel)
        with open(path, "r", encoding="utf-8") as fh:
            assert fh.read() == text, f"{rel} is stale; run tools/regen_case_study.py"


def test_scaffold_writes_stubs_and_refuses_overwrite(tmp_path, robot_checked):
    framework = generate_framework(robot_checked)
    out = tmp_path / "stubs"
    written = scaffold_stubs(robot_checked, framework, str(out))
    assert (out / "Motion.py").is_file()
    assert (out / "deploy.py").is_file()
    motion = (out / "Motion.py").read_text()
    assert "class Motion(AbstractMotion):" in motion
    assert "def onMode(self, value, pulls):" in motion
    with pytest.raises(FileExistsError):
        scaffold_stubs(robot_checked, framework, str(out))
    # refusing means it changed nothing
    assert (out / "Motion.py").read_text() == motion


def test_regeneration_never_touches_developer_files(tmp_path, robot_checked,
                                                    robot_spec):
    """Add an input to Motion, regenerate: developer files byte-identical,
    and instantiating the stale implementation names exactly the missing
    callback."""
    from scclang.model import ContextInput, ContextOperator, Specification

    out = tmp_path
    generate(robot_checked, str(out))
    dev_file = out / "motion_impl.py"
    dev_file.write_text(textwrap.dedent("""
        from generated.Motion import AbstractMotion


        class Motion(AbstractMotion):
            def onRandomMotion(self, value, pulls):
                pass

            def onTwist(self, value, pulls):
                pass

            def onMode(self, value, pulls):
                pass
    """))
    before = dev_file.read_bytes()
    dev_mtime = dev_file.stat().st_mtime_ns

    # Grow the design: Motion also listens to ObstacleZone.
    motion = robot_spec.context("Motion")
    grown_motion = ContextOperator(
        motion.name, motion.output_type,
        motion.inputs + (ContextInput("ObstacleZone"),), motion.span)
    grown = Specification(
        imports=robot_spec.imports, types=robot_spec.types,
        entities=robot_spec.entities,
        contexts=tuple(grown_motion if c.name == "Motion" else c
                       for c in robot_spec.contexts),
        controllers=robot_spec.controllers)
    regen = check(grown)
    assert regen.ok
    generate(regen.checked, str(out))

    assert dev_file.read_bytes() == before
    assert dev_file.stat().st_mtime_ns == dev_mtime

    code = textwrap.dedent("""
        import sys
        sys.path.insert(0, sys.argv[1])
        from motion_impl import Motion
        try:
            Motion()
        except TypeError as exc:
            print(exc)
        else:
            print("instantiated")
    """)
    proc = subprocess.run([sys.executable, "-c", code, str(out)],
                          capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0, proc.stderr
    message = proc.stdout.strip()
    assert "onObstacleZone" in message
    for implemented in ("onRandomMotion", "onTwist", "onMode"):
        assert implemented not in message


def test_generated_pull_proxies_work_end_to_end(tmp_path):
    """Deploy a generated framework with a pull binding: the callback's
    pulls object fetches current values from every provider instance."""
    generate(checked_of(PULL_DESIGN), str(tmp_path))
    code = textwrap.dedent("""
        import sys
        sys.path.insert(0, sys.argv[1])
        from generated.deploy import AbstractMainDeploy
        from generated.Ranger import AbstractRanger
        from generated.Sink import AbstractSink
        from generated.Watch import AbstractWatch
        from generated.Feed import AbstractFeed

        class Ranger(AbstractRanger):
            def __init__(self, level):
                super().__init__()
                self.level = level
            def getLevel(self):
                return self.level

        class Sink(AbstractSink):
            def __init__(self):
                super().__init__()
                self.dropped = []
            def drop(self, amount):
                self.dropped.append(amount)

        class Watch(AbstractWatch):
            def __init__(self):
                super().__init__()
                self.pulled = None
            def onFeed(self, value, pulls):
                self.pulled = pulls.getLevel()
                self.publishWatch(float(sum(self.pulled)))

        class Feed(AbstractFeed):
            def postInitialize(self):
                self.discoverRangerForSubscribe.all().subscribeLevel()
            def onLevel(self, value, pulls):
                self.publishFeed(value)

        class Deploy(AbstractMainDeploy):
            def __init__(self):
                self.ranger = Ranger(2.0)
                self.sink = Sink()
                self.watch = Watch()
            def createRanger(self):
                return self.ranger
            def createSink(self):
                return self.sink
            def createWatch(self):
                return self.watch
            def createFeed(self):
                return Feed()
            def createAct(self):
                from generated.Act import AbstractAct
                class Act(AbstractAct):
                    def onWatch(self, value, actions):
                        actions.sink.drop(value)
                return Act()

        deploy = Deploy()
        system = deploy.deployAll(mode="manual")
        second = Ranger(3.5)
        system.register_entity(second)
        deploy.ranger.publishLevel(1.0)
        system.settle()
        assert deploy.watch.pulled == [2.0, 3.5], deploy.watch.pulled
        assert deploy.sink.dropped == [5.5], deploy.sink.dropped
        system.shutdown()
        print("ok")
    """)
    proc = subprocess.run([sys.executable, "-c", code, str(tmp_path)],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.strip() == "ok"


def test_python_keyword_component_rejected():
    checked = checked_of("entity class { source s as Float; }"
                         .replace("class", "lambda"))
    with pytest.raises(CodegenError):
        generate_framework(checked)
