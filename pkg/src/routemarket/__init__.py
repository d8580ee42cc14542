"""Interactive multi-depot routing with steerable objective weights.

Vehicles are agents that bid for orders on a marketplace and improve their
own routes; a decider assigns orders by regret, watches for stagnation,
and applies the user's distance/tardiness preference live.
"""

from .model import (
    UNBOUNDED,
    Customer,
    Depot,
    Instance,
    ObjectiveVector,
    PreferenceWeights,
    Route,
    Solution,
    VehicleSpec,
    travel_time,
)
from .evaluation import (
    InsertionDelta,
    RouteSchedule,
    VisitTiming,
    insertion_delta,
    move_delta,
    objectives,
    schedule_route,
    sequence_feasible,
    sequence_totals,
    utility,
    weighted_cost,
)
from .local_search import Move, MoveKind, apply_move, descend, improve_step, sample_move
from .agent import Bid, VehicleAgent
from .marketplace import (
    UTILITY_EPS,
    Market,
    RegretEntry,
    StagnationMonitor,
    StalledError,
    assign_next,
    collect_quotes,
    construct,
    materialize,
    reallocate,
    reallocate_and_reassign,
    regret_entries,
    run_assignment,
)
from .cordeau import (
    CordeauFormatError,
    IssueKind,
    ParseIssue,
    load_instance,
    parse_cordeau,
    serialize_cordeau,
)
from .engine import (
    CommandKind,
    Engine,
    EngineCommand,
    EngineSnapshot,
    RunResult,
    SolutionRecord,
    StageResult,
    TrajectoryEvent,
    TrajectoryPoint,
    WeightStage,
    replay_schedule,
    scenario_schedule,
)

__version__ = "0.1.0"

__all__ = [
    "UNBOUNDED",
    "Customer",
    "Depot",
    "Instance",
    "ObjectiveVector",
    "PreferenceWeights",
    "Route",
    "Solution",
    "VehicleSpec",
    "travel_time",
    "InsertionDelta",
    "RouteSchedule",
    "VisitTiming",
    "insertion_delta",
    "move_delta",
    "objectives",
    "schedule_route",
    "sequence_feasible",
    "sequence_totals",
    "utility",
    "weighted_cost",
    "Move",
    "MoveKind",
    "apply_move",
    "descend",
    "improve_step",
    "sample_move",
    "Bid",
    "VehicleAgent",
    "Market",
    "RegretEntry",
    "StagnationMonitor",
    "StalledError",
    "assign_next",
    "collect_quotes",
    "construct",
    "materialize",
    "UTILITY_EPS",
    "reallocate",
    "reallocate_and_reassign",
    "regret_entries",
    "run_assignment",
    "CordeauFormatError",
    "IssueKind",
    "ParseIssue",
    "load_instance",
    "parse_cordeau",
    "serialize_cordeau",
    "CommandKind",
    "Engine",
    "EngineCommand",
    "EngineSnapshot",
    "RunResult",
    "SolutionRecord",
    "StageResult",
    "TrajectoryEvent",
    "TrajectoryPoint",
    "WeightStage",
    "replay_schedule",
    "scenario_schedule",
]
