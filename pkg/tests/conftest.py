import os

import pytest

from scclang.analyzer import check
from scclang.parser import parse_file

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
PKG_DIR = os.path.join(REPO_ROOT, "src", "scclang")
ROBOT_DESIGN = os.path.join(PKG_DIR, "designs", "robot.scc")
MAPS_DIR = os.path.join(PKG_DIR, "sim", "maps")
SIM_DIR = os.path.join(PKG_DIR, "sim")

BUNDLED_MAPS = ["room.map", "corridors.map", "cluttered.map"]


def map_path(name: str) -> str:
    return os.path.join(MAPS_DIR, name)


@pytest.fixture(scope="session")
def robot_spec():
    result = parse_file(ROBOT_DESIGN)
    assert result.ok, [str(d) for d in result.diagnostics]
    return result.spec


@pytest.fixture(scope="session")
def robot_checked(robot_spec):
    result = check(robot_spec)
    assert result.ok, [str(v) for v in result.violations]
    return result.checked


def pytest_runtest_logreport(report):
    # One visible pass/fail line per acceptance criterion.
    if "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call":
        verdict = "PASS" if report.passed else "FAIL"
        print(f"\nACCEPTANCE {name}: {verdict}", flush=True)
    elif report.when == "setup" and report.failed:
        print(f"\nACCEPTANCE {name}: FAIL (setup)", flush=True)
