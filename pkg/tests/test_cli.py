"""End-to-end CLI tests through the real argv surface."""

import json
import os
import subprocess
import sys

import pytest

from tests.conftest import ROBOT_DESIGN, map_path

CYCLE_DESIGN = """
context A as Boolean { context B; }
context B as Boolean { context A; }
"""


def run_cli(*args, timeout=300):
    return subprocess.run([sys.executable, "-m", "scclang.cli", *args],
                          capture_output=True, text=True, timeout=timeout)


def test_check_bundled_case_study_is_clean():
    proc = run_cli("check", ROBOT_DESIGN)
    assert proc.returncode == 0, proc.stderr


def test_check_reports_cycle_with_rule_id(tmp_path):
    bad = tmp_path / "cycle.scc"
    bad.write_text(CYCLE_DESIGN)
    proc = run_cli("check", str(bad))
    assert proc.returncode == 1
    assert "[R4]" in proc.stderr


def test_check_reports_parse_errors_with_location(tmp_path):
    bad = tmp_path / "broken.scc"
    bad.write_text("structure Twist { linear as Vector3; angular as }")
    proc = run_cli("check", str(bad))
    assert proc.returncode == 1
    assert f"{bad}:1:" in proc.stderr
    assert "error:" in proc.stderr


def test_check_missing_file_is_usage_error():
    proc = run_cli("check", "/nonexistent/no.scc")
    assert proc.returncode == 2


def test_unknown_subcommand_is_usage_error():
    proc = run_cli("frobnicate")
    assert proc.returncode == 2


def test_graph_to_stdout_and_file(tmp_path):
    proc = run_cli("graph", ROBOT_DESIGN)
    assert proc.returncode == 0
    assert proc.stdout.startswith("digraph design {")
    out = tmp_path / "design.dot"
    proc2 = run_cli("graph", ROBOT_DESIGN, "-o", str(out))
    assert proc2.returncode == 0
    assert out.read_text() == proc.stdout


def test_graph_deterministic_bytes(tmp_path):
    a = run_cli("graph", ROBOT_DESIGN).stdout
    b = run_cli("graph", ROBOT_DESIGN).stdout
    assert a == b


def test_compile_writes_framework_and_manifest(tmp_path):
    out = tmp_path / "build"
    proc = run_cli("compile", ROBOT_DESIGN, "-o", str(out))
    assert proc.returncode == 0, proc.stderr
    assert (out / "generated" / "Motion.py").is_file()
    assert (out / "generated" / "deploy.py").is_file()
    manifest = json.loads((out / "manifest.json").read_text())
    assert all({"componentName", "kind", "requiredSignature"} == set(e)
               for e in manifest)


def test_compile_with_scaffold(tmp_path):
    out = tmp_path / "build"
    stubs = tmp_path / "impl"
    proc = run_cli("compile", ROBOT_DESIGN, "-o", str(out),
                   "--scaffold", str(stubs))
    assert proc.returncode == 0, proc.stderr
    assert (stubs / "Motion.py").is_file()
    proc2 = run_cli("compile", ROBOT_DESIGN, "-o", str(out),
                    "--scaffold", str(stubs))
    assert proc2.returncode == 2  # refuses to overwrite stubs
    assert "refusing to overwrite" in proc2.stderr


def test_compile_unwritable_out_dir_is_io_error(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("file, not a directory")
    proc = run_cli("compile", ROBOT_DESIGN, "-o", str(blocker / "build"))
    assert proc.returncode == 2
    assert "error:" in proc.stderr


def test_compile_rejects_bad_design(tmp_path):
    bad = tmp_path / "cycle.scc"
    bad.write_text(CYCLE_DESIGN)
    proc = run_cli("compile", str(bad), "-o", str(tmp_path / "x"))
    assert proc.returncode == 1
    assert not (tmp_path / "x").exists()


def test_simulate_smoke_and_summary(tmp_path):
    proc = run_cli("simulate", ROBOT_DESIGN, "--map", map_path("room.map"),
                   "--seed", "3", "--steps", "50")
    assert proc.returncode == 0, proc.stderr
    assert "simulated 50 steps" in proc.stderr
    assert proc.stdout == ""


def test_simulate_rejects_foreign_design(tmp_path):
    other = tmp_path / "other.scc"
    other.write_text("entity Solo { source s as Float; }")
    proc = run_cli("simulate", str(other), "--map", map_path("room.map"))
    assert proc.returncode == 2
    assert "bundled case-study design" in proc.stderr


def test_simulate_missing_map_is_usage_error():
    proc = run_cli("simulate", ROBOT_DESIGN, "--map", "/no/such.map",
                   "--steps", "10")
    assert proc.returncode == 2


def test_simulate_trace_to_stdout(tmp_path):
    proc = run_cli("simulate", ROBOT_DESIGN, "--map", map_path("room.map"),
                   "--seed", "1", "--steps", "5", "--trace")
    assert proc.returncode == 0, proc.stderr
    lines = [json.loads(l) for l in proc.stdout.splitlines()]
    assert lines, "expected trace on stdout"
    assert {"ts", "producer", "channel", "seq"} == set(lines[0])


def test_simulate_respects_config_file(tmp_path):
    cfg = tmp_path / "slow.cfg"
    cfg.write_text("forward_speed = 0.0\nturn_rate = 0.0\n")
    proc = run_cli("simulate", ROBOT_DESIGN, "--map", map_path("room.map"),
                   "--seed", "1", "--steps", "20", "--config", str(cfg))
    assert proc.returncode == 0, proc.stderr
    # With zero speeds the robot reports its start pose.
    assert "pose=(1.25, 1.45, 0.00)" in proc.stderr


def test_simulate_exploration_mode(tmp_path):
    proc = run_cli("simulate", ROBOT_DESIGN, "--map", map_path("room.map"),
                   "--seed", "1", "--steps", "200", "--mode", "EXPLORATION")
    assert proc.returncode == 0, proc.stderr
    assert "mode=EXPLORATION" in proc.stderr
