"""Command line entry point: check, compile, graph and simulate workflows.

Exit codes: 0 success, 1 design diagnostics, 2 I/O or usage errors.
Diagnostics go to standard error as ``file:line:col: error[Rn]: message``.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from typing import Optional

from .analyzer import CheckResult, check, export_graph
from .codegen import CodegenError, generate, generate_framework, scaffold_stubs
from .parser import ParseResult, parse_file
from .runtime import jsonl_trace_writer

EXIT_OK = 0
EXIT_DIAGNOSTICS = 1
EXIT_USAGE = 2


def _load_checked(path: str):
    """Parse and check a design file, printing diagnostics on the way."""
    try:
        result: ParseResult = parse_file(path)
    except OSError as exc:
        print(f"error: cannot read {path}: {exc.strerror}", file=sys.stderr)
        return None, EXIT_USAGE
    for diag in result.diagnostics:
        print(diag, file=sys.stderr)
    if not result.ok:
        return None, EXIT_DIAGNOSTICS
    checked: CheckResult = check(result.spec)
    for warning in checked.warnings:
        print(warning, file=sys.stderr)
    for violation in checked.violations:
        print(violation, file=sys.stderr)
    if not checked.ok:
        return None, EXIT_DIAGNOSTICS
    return checked.checked, EXIT_OK


def cmd_check(args) -> int:
    checked, code = _load_checked(args.file)
    if checked is not None:
        print(f"{args.file}: ok", file=sys.stderr)
    return code


def cmd_compile(args) -> int:
    checked, code = _load_checked(args.file)
    if checked is None:
        return code
    try:
        framework = generate(checked, args.out_dir)
        if args.scaffold:
            scaffold_stubs(checked, framework, args.scaffold)
    except (OSError, FileExistsError, CodegenError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"wrote {len(framework.units)} units to {args.out_dir}",
          file=sys.stderr)
    return EXIT_OK


def cmd_graph(args) -> int:
    checked, code = _load_checked(args.file)
    if checked is None:
        return code
    dot = export_graph(checked)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(dot)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc.strerror}",
                  file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(dot)
    return EXIT_OK


def _bundled_design_path() -> str:
    return os.path.join(os.path.dirname(os.path.abspath(__file__)),
                        "designs", "robot.scc")


def cmd_simulate(args) -> int:
    checked, code = _load_checked(args.file)
    if checked is None:
        return code
    bundled = parse_file(_bundled_design_path())
    if checked.spec != bundled.spec:
        print("error: simulate runs the bundled case-study design; the given "
              "file declares a different design (its components or wiring "
              "differ from designs/robot.scc)", file=sys.stderr)
        return EXIT_USAGE

    from .sim.generated.datatypes import Mode
    from .sim.harness import Simulation
    from .sim.world import MapError, SimConfig, World

    try:
        cfg = (SimConfig.from_file(args.config) if args.config
               else SimConfig())
        world = World.from_map_file(args.map, cfg.cell_size)
    except (OSError, MapError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    trace_stream = None
    trace = None
    if args.trace is not None:
        if args.trace == "-":
            trace_stream = sys.stdout
        else:
            try:
                trace_stream = open(args.trace, "w", encoding="utf-8",
                                    newline="\n")
            except OSError as exc:
                print(f"error: cannot write {args.trace}: {exc.strerror}",
                      file=sys.stderr)
                return EXIT_USAGE
        trace = jsonl_trace_writer(trace_stream)

    sim = Simulation(world, cfg, seed=args.seed, initial_mode=Mode[args.mode],
                     trace=trace)
    console = None
    try:
        if args.console is not None:
            from .console import ConsoleServer
            console = ConsoleServer(sim, args.console)
            console.start()
            print(f"operator console on http://127.0.0.1:{args.console}/",
                  file=sys.stderr)
        if console is not None:
            # Real time pacing so the console is watchable and frames flow
            # at the advertised rate; headless runs go flat out.
            deadline = time.monotonic()
            for _ in range(args.steps):
                sim.tick()
                deadline += cfg.dt
                delay = deadline - time.monotonic()
                if delay > 0:
                    time.sleep(delay)
        else:
            sim.run(args.steps)
    except KeyboardInterrupt:
        print("interrupted", file=sys.stderr)
    finally:
        if console is not None:
            console.stop()
        sim.shutdown()
        if trace_stream is not None and trace_stream is not sys.stdout:
            trace_stream.close()

    w = sim.world
    known_free = int(w.known_free().sum())
    print(f"simulated {sim.tick_index} steps: pose=({w.x:.2f}, {w.y:.2f}, "
          f"{w.theta:.2f}) mode={sim.mode.value} collisions="
          f"{w.collision_count} pictures={len(w.pictures)} "
          f"known-free={known_free}/{w.free_count()}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scclang",
        description="Compiler and runtime for the SCC design language")
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="parse and analyze a design")
    p_check.add_argument("file")
    p_check.set_defaults(fn=cmd_check)

    p_compile = sub.add_parser("compile",
                               help="check, then generate the framework")
    p_compile.add_argument("file")
    p_compile.add_argument("-o", "--out-dir", required=True)
    p_compile.add_argument("--scaffold", metavar="DIR",
                           help="also emit one-time implementation stubs")
    p_compile.set_defaults(fn=cmd_compile)

    p_graph = sub.add_parser("graph", help="export the component graph (DOT)")
    p_graph.add_argument("file")
    p_graph.add_argument("-o", "--out", help="output file (default stdout)")
    p_graph.set_defaults(fn=cmd_graph)

    p_sim = sub.add_parser("simulate",
                           help="run the case-study robot simulation")
    p_sim.add_argument("file", help="the case-study design file")
    p_sim.add_argument("--map", required=True, help="map file")
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--steps", type=int, default=10000)
    p_sim.add_argument("--mode", choices=("RANDOM", "EXPLORATION"),
                       default="RANDOM", help="initial mode")
    p_sim.add_argument("--config", help="key = value config file")
    p_sim.add_argument("--console", type=int, metavar="PORT",
                       help="serve the operator console on this port")
    p_sim.add_argument("--trace", nargs="?", const="-", metavar="PATH",
                       help="write a JSONL event trace (stdout if no path)")
    p_sim.set_defaults(fn=cmd_simulate)
    return parser


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
