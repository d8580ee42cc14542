"""Command line front end: batch schedule solving and the steering service."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cordeau import CordeauFormatError, load_instance
from .engine import (
    DEFAULT_EJECTION_SIZE,
    DEFAULT_MICRO_BUDGET,
    DEFAULT_PATIENCE,
    DEFAULT_STAGE_BUDGET,
    RunResult,
    WeightStage,
    replay_schedule,
    scenario_schedule,
)
from .evaluation import schedule_route
from .marketplace import StalledError
from .model import Instance, Solution

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_STALLED = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="routemarket",
        description="Interactive multi-depot routing with steerable objective weights.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run a weight schedule to completion")
    solve.add_argument("--instance", required=True, help="instance file path")
    pick = solve.add_mutually_exclusive_group(required=True)
    pick.add_argument("--scenario", choices=["A", "B", "C"], help="built-in weight schedule")
    pick.add_argument("--schedule", help="JSON file: list of {w_dist, budget} stages")
    solve.add_argument("--seed", type=int, default=0)
    solve.add_argument(
        "--deterministic",
        action="store_true",
        help="sequential sweeps; repeat runs produce identical artifacts",
    )
    solve.add_argument("--patience", type=int, default=DEFAULT_PATIENCE)
    solve.add_argument("--ejection-size", type=int, default=DEFAULT_EJECTION_SIZE)
    solve.add_argument("--micro-budget", type=int, default=DEFAULT_MICRO_BUDGET)
    solve.add_argument(
        "--stage-budget",
        type=int,
        default=DEFAULT_STAGE_BUDGET,
        help="per-stage iteration cap when using --scenario",
    )
    solve.add_argument(
        "--out", default=".", help="directory for trajectory.jsonl and solution.json"
    )

    serve = sub.add_parser("serve", help="serve the steering API over HTTP")
    serve.add_argument("--instance", required=True)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--seed", type=int, default=0)
    serve.add_argument("--deterministic", action="store_true")
    serve.add_argument("--patience", type=int, default=DEFAULT_PATIENCE)
    serve.add_argument("--ejection-size", type=int, default=DEFAULT_EJECTION_SIZE)
    serve.add_argument("--micro-budget", type=int, default=DEFAULT_MICRO_BUDGET)
    serve.add_argument("--static", help="directory of UI files to serve at /")
    return parser


def load_schedule_file(path: str) -> list[WeightStage]:
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, list) or not raw:
        raise ValueError("schedule file must hold a non-empty JSON array")
    stages = []
    for i, item in enumerate(raw):
        if not isinstance(item, dict) or "w_dist" not in item or "budget" not in item:
            raise ValueError(f"stage {i}: expected an object with w_dist and budget")
        stages.append(WeightStage(float(item["w_dist"]), int(item["budget"])))
    return stages


def route_report(solution: Solution, instance: Instance) -> list[dict]:
    rows = []
    for vid in sorted(solution.routes):
        route = solution.routes[vid]
        sched = schedule_route(route, instance)
        rows.append(
            {
                "vehicle": vid,
                "depot": instance.vehicle(vid).home_depot,
                "sequence": list(route.sequence),
                "distance": sched.distance,
                "tardiness": sched.tardiness,
                "duration": sched.duration,
                "load": sched.load,
            }
        )
    return rows


def solution_report(
    instance: Instance, result: RunResult, *, instance_path: str, seed: int
) -> dict:
    final = result.final
    return {
        "instance": instance_path,
        "seed": seed,
        "wall_iterations": result.wall_iterations,
        "w_dist": result.stages[-1].w_dist if result.stages else None,
        "objectives": {"dist": final.objectives.dist, "tardy": final.objectives.tardy},
        "utility": final.utility,
        "stages": [
            {
                "w_dist": s.w_dist,
                "dist": s.best.objectives.dist,
                "tardy": s.best.objectives.tardy,
                "utility": s.best.utility,
                "reason": s.reason,
                "start_iteration": s.start_iteration,
                "end_iteration": s.end_iteration,
            }
            for s in result.stages
        ],
        "routes": route_report(final.solution, instance),
        "unassigned": sorted(final.solution.unassigned),
    }


def _load_instance_or_fail(path: str) -> Instance | None:
    try:
        return load_instance(path)
    except FileNotFoundError:
        print(f"error: instance file not found: {path}", file=sys.stderr)
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
    except CordeauFormatError as exc:
        print(f"error: {path} is not a valid instance file:", file=sys.stderr)
        for issue in exc.issues:
            print(f"  {issue}", file=sys.stderr)
    return None


def cmd_solve(args: argparse.Namespace) -> int:
    instance = _load_instance_or_fail(args.instance)
    if instance is None:
        return EXIT_INPUT

    if args.scenario:
        schedule = scenario_schedule(args.scenario, args.stage_budget)
    else:
        try:
            schedule = load_schedule_file(args.schedule)
        except OSError as exc:
            print(f"error: cannot read schedule: {exc}", file=sys.stderr)
            return EXIT_INPUT
        except (ValueError, json.JSONDecodeError) as exc:
            print(f"error: bad schedule file: {exc}", file=sys.stderr)
            return EXIT_INPUT

    try:
        result = replay_schedule(
            instance,
            schedule,
            seed=args.seed,
            patience=args.patience,
            ejection_size=args.ejection_size,
            micro_budget=args.micro_budget,
            deterministic=args.deterministic,
        )
    except StalledError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STALLED

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    trajectory_path = out / "trajectory.jsonl"
    with open(trajectory_path, "w", encoding="utf-8") as fh:
        for point in result.trajectory:
            fh.write(json.dumps(point.as_record()) + "\n")
    report = solution_report(
        instance, result, instance_path=args.instance, seed=args.seed
    )
    solution_path = out / "solution.json"
    with open(solution_path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(report, indent=2) + "\n")

    for stage in result.stages:
        best = stage.best
        print(
            f"w_dist={stage.w_dist:.1f}  dist={best.objectives.dist:.1f}  "
            f"tardy={best.objectives.tardy:.1f}  utility={best.utility:.2f}  "
            f"[{stage.reason}]"
        )
    print(f"wrote {trajectory_path} and {solution_path}")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    instance = _load_instance_or_fail(args.instance)
    if instance is None:
        return EXIT_INPUT

    import uvicorn

    from .service import create_app

    app = create_app(
        instance,
        seed=args.seed,
        patience=args.patience,
        ejection_size=args.ejection_size,
        micro_budget=args.micro_budget,
        deterministic=args.deterministic,
        static_dir=args.static,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "solve":
        return cmd_solve(args)
    return cmd_serve(args)


if __name__ == "__main__":
    sys.exit(main())
