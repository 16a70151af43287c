"""Command line front end: run / bench / validate / list.

Exit codes: 0 success, 1 scenario diagnostics, 2 simulation halt.
"""

from __future__ import annotations

import argparse
import sys

from .run import bench, run_scenario, summary_text, write_outputs
from .scenario import ScenarioError, bundled_scenarios, load_bundled, load_scenario_file


def _load(path: str):
    """Load a scenario from a file path or a bundled scenario name."""
    try:
        if path.endswith(".scn"):
            return load_scenario_file(path)
        return load_bundled(path)
    except FileNotFoundError:
        print(f"error: no such scenario file or bundled name: {path}", file=sys.stderr)
        raise SystemExit(1)
    except ScenarioError as err:
        print(f"scenario diagnostics for {path}:", file=sys.stderr)
        for d in err.diagnostics:
            print(f"  {d}", file=sys.stderr)
        raise SystemExit(1)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="fracnav",
                                 description="Passive navigation planner simulator")
    sub = ap.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate a scenario and write CSV + summary")
    p_run.add_argument("scenario", help="path to a .scn file or a bundled name")
    p_run.add_argument("--out", default="out", help="output directory (default: out)")
    p_run.add_argument("--feedback-hz", type=float, default=None,
                       help="override every agent's feedback rate")
    p_run.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    p_run.add_argument("--parallel", action="store_true",
                       help="evaluate per-agent controllers in a thread pool")

    p_bench = sub.add_parser("bench", help="wall-clock scaling of two scenarios")
    p_bench.add_argument("single", help="baseline scenario (.scn path or bundled name)")
    p_bench.add_argument("swarm", help="scaled scenario (.scn path or bundled name)")
    p_bench.add_argument("--repeats", type=int, default=20)

    p_val = sub.add_parser("validate", help="parse and validate a scenario file")
    p_val.add_argument("scenario")

    sub.add_parser("list", help="list bundled scenarios")

    args = ap.parse_args(argv)

    if args.command == "list":
        for name in bundled_scenarios():
            print(name)
        return 0

    if args.command == "validate":
        sc = _load(args.scenario)
        print(f"ok: {sc.name} ({sc.kind}, {len(sc.agents)} agents, "
              f"{sc.duration} s @ dt={sc.dt})")
        return 0

    if args.command == "run":
        sc = _load(args.scenario)
        sc = sc.with_overrides(feedback_hz=args.feedback_hz, seed=args.seed)
        result = run_scenario(sc, parallel=args.parallel)
        csv_path, summary_path = write_outputs(result, args.out)
        sys.stdout.write(summary_text(result.summary))
        print(f"csv = {csv_path}")
        print(f"summary = {summary_path}")
        return 2 if result.halted else 0

    if args.command == "bench":
        single = _load(args.single)
        swarm = _load(args.swarm)
        report = bench(single, swarm, repeats=args.repeats)
        sys.stdout.write(report.text())
        return 0

    return 0


if __name__ == "__main__":
    raise SystemExit(main())
