#!/usr/bin/env python3
"""Regenerate the checked-in case-study framework from the bundled design.

Run after editing src/scclang/designs/robot.scc; the test suite fails if
the checked-in framework drifts from what the generator produces.
"""

import os
import sys

from scclang.analyzer import check
from scclang.codegen import generate
from scclang.parser import parse_file

HERE = os.path.dirname(os.path.abspath(__file__))
DESIGN = os.path.join(HERE, "..", "src", "scclang", "designs", "robot.scc")
OUT = os.path.join(HERE, "..", "src", "scclang", "sim")


def main() -> int:
    result = parse_file(DESIGN)
    if not result.ok:
        for diag in result.diagnostics:
            print(diag, file=sys.stderr)
        return 1
    checked = check(result.spec)
    if not checked.ok:
        for violation in checked.violations:
            print(violation, file=sys.stderr)
        return 1
    framework = generate(checked.checked, OUT)
    print(f"wrote {len(framework.units)} units under {os.path.normpath(OUT)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
