"""Run orchestration.

The engine owns the solution lifecycle: construct once, then improve in
sweeps. Each sweep hands every vehicle agent a fixed burst of improvement
steps (concurrently unless deterministic mode is on), then the engine
aggregates objectives, records trajectory points, reacts to stagnation,
and applies queued commands. Commands never interrupt a sweep, so every
observable state is a between-sweeps state.
"""

from __future__ import annotations

import enum
import queue
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

from .agent import VehicleAgent
from .evaluation import RouteSchedule, objectives, schedule_route, utility
from .marketplace import (
    UTILITY_EPS,
    Market,
    StagnationMonitor,
    construct,
    materialize,
    reallocate_and_reassign,
)
from .model import Instance, ObjectiveVector, PreferenceWeights, Solution

DEFAULT_PATIENCE = 2000
DEFAULT_EJECTION_SIZE = 2
DEFAULT_MICRO_BUDGET = 200
DEFAULT_STAGE_BUDGET = 40_000


@dataclass(frozen=True)
class WeightStage:
    """One schedule step: hold ``w_dist`` for at most ``budget`` improvement
    iterations (the interval may converge and end sooner)."""

    w_dist: float
    budget: int

    def __post_init__(self):
        if not 0.0 <= self.w_dist <= 1.0:
            raise ValueError(f"w_dist must be in [0, 1], got {self.w_dist}")
        if self.budget < 1:
            raise ValueError(f"stage budget must be >= 1, got {self.budget}")


def scenario_schedule(name: str, stage_budget: int = DEFAULT_STAGE_BUDGET) -> list[WeightStage]:
    """The three canned steering scenarios.

    A walks w_dist from 1.0 down to 0.0, B from 0.0 up to 1.0, and C starts
    at 0.5, rises to 1.0, then falls to 0.0, all in steps of 0.1.
    """
    key = name.strip().upper()
    if key == "A":
        weights = [i / 10 for i in range(10, -1, -1)]
    elif key == "B":
        weights = [i / 10 for i in range(0, 11)]
    elif key == "C":
        weights = [i / 10 for i in range(5, 11)] + [i / 10 for i in range(9, -1, -1)]
    else:
        raise ValueError(f"unknown scenario {name!r} (expected A, B, or C)")
    return [WeightStage(w, stage_budget) for w in weights]


class TrajectoryEvent(enum.Enum):
    IMPROVED = "Improved"
    WEIGHT_CHANGED = "WeightChanged"
    REALLOCATED = "Reallocated"
    CONVERGED = "Converged"


@dataclass(frozen=True)
class TrajectoryPoint:
    """One observable run event with the objectives at that moment."""

    wall_iteration: int
    w_dist: float
    objectives: ObjectiveVector
    utility: float
    event: TrajectoryEvent

    def as_record(self) -> dict:
        """Flat dict with a fixed key order, ready for line serialization."""
        return {
            "wall_iteration": self.wall_iteration,
            "w_dist": self.w_dist,
            "dist": self.objectives.dist,
            "tardy": self.objectives.tardy,
            "utility": self.utility,
            "event": self.event.value,
        }


class CommandKind(enum.Enum):
    SET_WEIGHT = "SetWeight"
    PAUSE = "Pause"
    RESUME = "Resume"
    FORCE_REALLOCATE = "ForceReallocate"
    STOP = "Stop"


@dataclass(frozen=True)
class EngineCommand:
    """A control message applied between sweeps."""

    kind: CommandKind
    payload: float | None = None

    def __post_init__(self):
        if self.kind is CommandKind.SET_WEIGHT:
            if self.payload is None or not 0.0 <= self.payload <= 1.0:
                raise ValueError(f"SetWeight payload must be in [0, 1], got {self.payload}")


@dataclass(frozen=True)
class SolutionRecord:
    """An immutable scored snapshot of one solution."""

    solution: Solution
    objectives: ObjectiveVector
    utility: float
    wall_iteration: int


@dataclass(frozen=True)
class StageResult:
    """Endpoint of one schedule stage: its best record and why it ended."""

    w_dist: float
    start_iteration: int
    end_iteration: int
    best: SolutionRecord
    reason: str  # "converged", "budget", or "stopped"


@dataclass(frozen=True)
class RunResult:
    trajectory: list[TrajectoryPoint]
    stages: list[StageResult]
    best_per_weight: dict[float, SolutionRecord]
    final: SolutionRecord
    wall_iterations: int


@dataclass(frozen=True)
class EngineSnapshot:
    """Point-in-time state published between sweeps; safe to share across
    threads because every field is a copy or immutable."""

    status: str
    wall_iteration: int
    w_dist: float
    weight_version: int
    solution_version: int
    solution: Solution
    objectives: ObjectiveVector
    utility: float
    schedules: dict[int, RouteSchedule]
    open_orders: tuple[int, ...]
    best_per_weight: dict[float, SolutionRecord]


Observer = Callable[[EngineSnapshot, "TrajectoryPoint | None"], None]


class Engine:
    """Drives one run: construction, sweeps, stagnation handling, commands.

    Per-agent RNG streams are derived from the seed and the vehicle id, so
    the concurrent and the deterministic sweep produce identical results;
    deterministic mode only removes scheduling jitter from timing.
    """

    def __init__(
        self,
        instance: Instance,
        *,
        seed: int = 0,
        initial_w: float = 0.5,
        patience: int = DEFAULT_PATIENCE,
        ejection_size: int = DEFAULT_EJECTION_SIZE,
        micro_budget: int = DEFAULT_MICRO_BUDGET,
        deterministic: bool = False,
        selector: str = "costliest",
        observer: Observer | None = None,
    ):
        if micro_budget < 1:
            raise ValueError("micro_budget must be >= 1")
        self.instance = instance
        self.seed = seed
        self.micro_budget = micro_budget
        self.deterministic = deterministic
        self.selector = selector
        self.w = PreferenceWeights(initial_w)
        self.agents = {v.id: VehicleAgent(v, instance) for v in instance.vehicles}
        self._rngs = {vid: random.Random(seed * 1_000_003 + vid) for vid in self.agents}
        self._realloc_rng = random.Random(seed * 1_000_003)
        self.market = Market()
        self.monitor = StagnationMonitor(patience, ejection_size)
        self.trajectory: list[TrajectoryPoint] = []
        self.best_per_weight: dict[float, SolutionRecord] = {}
        self.wall_iteration = 0
        self.weight_version = 0
        self.solution_version = 0
        self.status = "idle"
        self.commands: queue.SimpleQueue = queue.SimpleQueue()
        self.latest: EngineSnapshot | None = None
        self._observer = observer
        self._paused = False
        self._stopping = False
        self._had_trip = False
        self._improved_since_trip = False
        self._interval_converged = False
        self._interval_best: SolutionRecord | None = None
        self._executor: ThreadPoolExecutor | None = None
        self._initialized = False

    # -- state recording ---------------------------------------------------

    def _record_current(self) -> SolutionRecord:
        solution = materialize(self.instance, self.agents, self.market)
        obj = objectives(solution, self.instance)
        return SolutionRecord(solution, obj, utility(obj, self.w), self.wall_iteration)

    def _store_interval_best(self, record: SolutionRecord) -> None:
        self._interval_best = record
        held = self.best_per_weight.get(self.w.w_dist)
        if held is None or record.utility <= held.utility - UTILITY_EPS:
            self.best_per_weight[self.w.w_dist] = record

    def _append_point(self, event: TrajectoryEvent, record: SolutionRecord) -> TrajectoryPoint:
        point = TrajectoryPoint(
            wall_iteration=self.wall_iteration,
            w_dist=self.w.w_dist,
            objectives=record.objectives,
            utility=record.utility,
            event=event,
        )
        self.trajectory.append(point)
        return point

    def _publish(
        self, point: TrajectoryPoint | None = None, notify: bool = False
    ) -> EngineSnapshot:
        solution = materialize(self.instance, self.agents, self.market)
        obj = objectives(solution, self.instance)
        snap = EngineSnapshot(
            status=self.status,
            wall_iteration=self.wall_iteration,
            w_dist=self.w.w_dist,
            weight_version=self.weight_version,
            solution_version=self.solution_version,
            solution=solution,
            objectives=obj,
            utility=utility(obj, self.w),
            schedules={
                vid: schedule_route(route, self.instance)
                for vid, route in solution.routes.items()
            },
            open_orders=tuple(sorted(self.market.open_orders)),
            best_per_weight=dict(self.best_per_weight),
        )
        self.latest = snap
        if notify and self._observer is not None:
            self._observer(snap, point)
        return snap

    def snapshot(self) -> EngineSnapshot:
        """Latest published state; readable from any thread."""
        snap = self.latest
        if snap is None:
            snap = self._publish()
        return snap

    # -- lifecycle ----------------------------------------------------------

    def initialize(self) -> SolutionRecord:
        """Construct the initial complete solution at the current weights."""
        if self._initialized:
            raise RuntimeError("engine already initialized")
        try:
            construct(self.instance, self.agents, self.w, self.market)
        except Exception:
            self.status = "stalled"
            self._publish(notify=True)
            raise
        self._initialized = True
        record = self._record_current()
        self.monitor.reset(best_utility=record.utility)
        self._store_interval_best(record)
        point = self._append_point(TrajectoryEvent.IMPROVED, record)
        self._publish(point=point, notify=True)
        return record

    def close(self) -> None:
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None

    # -- sweeps --------------------------------------------------------------

    def _improve_all(self) -> bool:
        before = {vid: agent.version for vid, agent in self.agents.items()}

        def burst(vid: int) -> None:
            self.agents[vid].improve(
                self.w,
                self._rngs[vid],
                patience=self.micro_budget,
                max_steps=self.micro_budget,
            )

        order = sorted(self.agents)
        if self.deterministic:
            for vid in order:
                burst(vid)
        else:
            if self._executor is None:
                self._executor = ThreadPoolExecutor(
                    max_workers=min(32, len(self.agents)), thread_name_prefix="agent"
                )
            list(self._executor.map(burst, order))
        return any(self.agents[vid].version != before[vid] for vid in before)

    def sweep(self) -> None:
        """One improvement burst across all agents, then bookkeeping."""
        changed = self._improve_all()
        self.wall_iteration += self.micro_budget * len(self.agents)
        if changed:
            self.solution_version += 1
        record = self._record_current()
        improved = record.utility <= self.monitor.best_utility - UTILITY_EPS
        tripped = self.monitor.observe(
            record.utility, iterations=self.micro_budget * len(self.agents)
        )
        point = None
        if improved:
            self._store_interval_best(record)
            self._improved_since_trip = True
            point = self._append_point(TrajectoryEvent.IMPROVED, record)
        if tripped:
            if self._had_trip and not self._improved_since_trip:
                self._interval_converged = True
                self.status = "converged"
                point = self._append_point(TrajectoryEvent.CONVERGED, self._interval_best)
            else:
                self._had_trip = True
                self._improved_since_trip = False
                point = self._reallocate_now()
        self._publish(point=point, notify=changed or point is not None)

    def _reallocate_now(self) -> TrajectoryPoint:
        reallocate_and_reassign(
            self.market,
            self.agents,
            self.w,
            self.monitor.ejection_size,
            self._realloc_rng,
            selector=self.selector,
        )
        self.solution_version += 1
        return self._append_point(TrajectoryEvent.REALLOCATED, self._record_current())

    # -- commands ------------------------------------------------------------

    def set_weight(self, w_dist: float) -> TrajectoryPoint:
        """Adopt new weights; the incumbent solution carries over re-scored."""
        self.w = PreferenceWeights(w_dist)
        self.weight_version += 1
        record = self._record_current()
        self.monitor.reset(best_utility=record.utility)
        self._had_trip = False
        self._improved_since_trip = False
        self._interval_converged = False
        if self.status == "converged":
            self.status = "running"
        self._store_interval_best(record)
        point = self._append_point(TrajectoryEvent.WEIGHT_CHANGED, record)
        self._publish(point=point, notify=True)
        return point

    def force_reallocate(self) -> TrajectoryPoint:
        """Immediate ejection cycle, outside the stagnation schedule."""
        point = self._reallocate_now()
        self.monitor.since_improvement = 0
        self._had_trip = False
        self._improved_since_trip = False
        self._interval_converged = False
        if self.status == "converged":
            self.status = "running"
        self._publish(point=point, notify=True)
        return point

    def submit(self, command: EngineCommand) -> None:
        """Queue a command from any thread; applied between sweeps."""
        self.commands.put(command)

    def _apply_command(self, command: EngineCommand) -> None:
        if command.kind is CommandKind.SET_WEIGHT:
            self.set_weight(command.payload)
        elif command.kind is CommandKind.FORCE_REALLOCATE:
            self.force_reallocate()
        elif command.kind is CommandKind.PAUSE:
            if not self._paused:
                self._paused = True
                self.status = "paused"
                self._publish(notify=True)
        elif command.kind is CommandKind.RESUME:
            if self._paused:
                self._paused = False
                self.status = "running"
                self._publish(notify=True)
        elif command.kind is CommandKind.STOP:
            self._stopping = True

    def _drain_commands(self, block: bool = False) -> None:
        while True:
            try:
                command = self.commands.get(block=block, timeout=0.05 if block else None)
            except queue.Empty:
                return
            self._apply_command(command)
            block = False

    # -- run loops -----------------------------------------------------------

    def run_stage(self, stage: WeightStage) -> StageResult:
        """Sweep at the current weights until convergence or budget expiry."""
        if not self._initialized:
            raise RuntimeError("initialize() must run before any stage")
        start = self.wall_iteration
        self._interval_converged = False
        reason = None
        while reason is None:
            self._drain_commands()
            while self._paused and not self._stopping:
                self._drain_commands(block=True)
            if self._stopping:
                reason = "stopped"
            elif self._interval_converged:
                reason = "converged"
            elif self.wall_iteration - start >= stage.budget:
                reason = "budget"
            else:
                self.sweep()
        return StageResult(
            w_dist=self.w.w_dist,
            start_iteration=start,
            end_iteration=self.wall_iteration,
            best=self._interval_best,
            reason=reason,
        )

    def run(self, schedule: list[WeightStage]) -> RunResult:
        """Replay a full weight schedule and report per-stage endpoints."""
        if not schedule:
            raise ValueError("schedule must contain at least one stage")
        try:
            if not self._initialized:
                self.w = PreferenceWeights(schedule[0].w_dist)
                self.status = "running"
                self.initialize()
            else:
                self.status = "running"
                if schedule[0].w_dist != self.w.w_dist:
                    self.set_weight(schedule[0].w_dist)
            stages = []
            for i, stage in enumerate(schedule):
                if self._stopping:
                    break
                if i > 0:
                    self.set_weight(stage.w_dist)
                stages.append(self.run_stage(stage))
            self.status = "stopped" if self._stopping else "done"
            self._publish(notify=True)
            final = stages[-1].best if stages else self._interval_best
            return RunResult(
                trajectory=list(self.trajectory),
                stages=stages,
                best_per_weight=dict(self.best_per_weight),
                final=final,
                wall_iterations=self.wall_iteration,
            )
        finally:
            self.close()

    def run_interactive(self, start_paused: bool = True) -> None:
        """Serve mode: sweep continuously, idling while paused or converged,
        until a Stop command arrives."""
        try:
            if not self._initialized:
                self.initialize()
            self._paused = start_paused
            self.status = "paused" if start_paused else "running"
            self._publish(notify=True)
            while not self._stopping:
                if self._paused or self._interval_converged:
                    self._drain_commands(block=True)
                    continue
                self._drain_commands()
                if self._stopping or self._paused or self._interval_converged:
                    continue
                self.sweep()
            self.status = "stopped"
            self._publish(notify=True)
        finally:
            self.close()


def replay_schedule(
    instance: Instance,
    schedule: list[WeightStage],
    *,
    seed: int = 0,
    patience: int = DEFAULT_PATIENCE,
    ejection_size: int = DEFAULT_EJECTION_SIZE,
    micro_budget: int = DEFAULT_MICRO_BUDGET,
    deterministic: bool = False,
    observer: Observer | None = None,
) -> RunResult:
    """Run a schedule on a fresh engine and return the full result."""
    engine = Engine(
        instance,
        seed=seed,
        initial_w=schedule[0].w_dist if schedule else 0.5,
        patience=patience,
        ejection_size=ejection_size,
        micro_budget=micro_budget,
        deterministic=deterministic,
        observer=observer,
    )
    return engine.run(schedule)
