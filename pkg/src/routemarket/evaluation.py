"""Route schedules, the two objectives, scalar utility, and move/insertion deltas.

All functions are pure over immutable inputs, so routes can be evaluated
concurrently. Route-level deltas re-evaluate the mutated route only; at the
route lengths this problem produces that is both exact and fast.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .model import (
    Instance,
    ObjectiveVector,
    PreferenceWeights,
    Route,
    Solution,
    VehicleSpec,
)

if TYPE_CHECKING:
    from .local_search import Move


@dataclass(frozen=True)
class VisitTiming:
    """Arrival, wait, and service timing at one visited customer."""

    customer: int
    arrival: float
    wait: float
    service_start: float
    completion: float
    tardiness: float


@dataclass(frozen=True)
class RouteSchedule:
    """Per-visit timings plus route totals for one vehicle's route."""

    visits: tuple[VisitTiming, ...]
    distance: float
    duration: float
    load: float
    tardiness: float


def sequence_totals(
    sequence, vehicle: VehicleSpec, instance: Instance
) -> tuple[float, float, float, float]:
    """Evaluate a visit sequence for ``vehicle``.

    Returns ``(distance, tardiness, duration, load)``. This is the light
    evaluation core shared by schedules, deltas, and local search; it walks
    the route once, simulating departure at the depot's opening time.
    """
    depot = instance.depots_by_id[vehicle.home_depot]
    customers = instance.customers_by_id
    x, y = depot.x, depot.y
    clock = depot.tw_open
    dist = 0.0
    tardy = 0.0
    load = 0.0
    for cid in sequence:
        try:
            c = customers[cid]
        except KeyError:
            raise ValueError(f"unknown customer id {cid}") from None
        leg = math.hypot(c.x - x, c.y - y)
        dist += leg
        arrival = clock + leg
        if arrival > c.tw_close:
            tardy += arrival - c.tw_close
        clock = (arrival if arrival >= c.tw_open else c.tw_open) + c.service_time
        load += c.demand
        x, y = c.x, c.y
    back = math.hypot(depot.x - x, depot.y - y)
    dist += back
    duration = clock + back - depot.tw_open
    return dist, tardy, duration, load


def sequence_feasible(sequence, vehicle: VehicleSpec, instance: Instance) -> bool:
    """Capacity and (when bounded) duration feasibility of a sequence."""
    dist, tardy, duration, load = sequence_totals(sequence, vehicle, instance)
    if load > vehicle.capacity:
        return False
    return duration <= vehicle.max_route_duration


def schedule_route(route: Route, instance: Instance) -> RouteSchedule:
    """Full schedule of a route: per-visit timings and totals.

    The vehicle departs its home depot when the depot opens. Waiting occurs
    on early arrival, tardiness accrues on arrival after the window closes,
    and the distance includes the final leg back to the depot.
    """
    vehicle = instance.vehicle(route.vehicle)
    depot = instance.depot(vehicle.home_depot)
    x, y = depot.x, depot.y
    clock = depot.tw_open
    dist = 0.0
    load = 0.0
    total_tardy = 0.0
    visits = []
    for cid in route.sequence:
        c = instance.customer(cid)
        leg = math.hypot(c.x - x, c.y - y)
        dist += leg
        arrival = clock + leg
        service_start = max(arrival, c.tw_open)
        tardiness = max(0.0, arrival - c.tw_close)
        completion = service_start + c.service_time
        visits.append(
            VisitTiming(
                customer=cid,
                arrival=arrival,
                wait=service_start - arrival,
                service_start=service_start,
                completion=completion,
                tardiness=tardiness,
            )
        )
        total_tardy += tardiness
        load += c.demand
        clock = completion
        x, y = c.x, c.y
    back = math.hypot(depot.x - x, depot.y - y)
    dist += back
    return RouteSchedule(
        visits=tuple(visits),
        distance=dist,
        duration=clock + back - depot.tw_open,
        load=load,
        tardiness=total_tardy,
    )


def objectives(solution: Solution, instance: Instance) -> ObjectiveVector:
    """Total distance and total tardiness over all routes.

    Unassigned customers contribute nothing; final solutions are expected
    to have an empty pool.
    """
    dist = 0.0
    tardy = 0.0
    for route in solution.routes.values():
        vehicle = instance.vehicle(route.vehicle)
        d, t, _, _ = sequence_totals(route.sequence, vehicle, instance)
        dist += d
        tardy += t
    return ObjectiveVector(dist, tardy)


def utility(obj: ObjectiveVector, w: PreferenceWeights) -> float:
    """Weighted-sum aggregation of the two cost criteria; lower is better."""
    return w.w_dist * obj.dist + (1.0 - w.w_dist) * obj.tardy


def weighted_cost(
    sequence, vehicle: VehicleSpec, instance: Instance, w: PreferenceWeights
) -> float:
    """Utility contribution of a single route under weights ``w``."""
    dist, tardy, _, _ = sequence_totals(sequence, vehicle, instance)
    return w.w_dist * dist + (1.0 - w.w_dist) * tardy


@dataclass(frozen=True)
class InsertionDelta:
    """Exact cost change of inserting one order at one position."""

    delta_dist: float
    delta_tardy: float
    delta_utility: float
    feasible: bool


def insertion_delta(
    route: Route,
    order: int,
    position: int,
    instance: Instance,
    w: PreferenceWeights,
) -> InsertionDelta:
    """Cost change of inserting ``order`` at ``position`` (0 = front, len = back).

    Deltas equal the difference of full route evaluations. ``feasible`` is
    False exactly when the insertion would violate the vehicle's capacity
    or, when bounded, its maximum route duration.
    """
    if not 0 <= position <= len(route.sequence):
        raise IndexError(
            f"insertion position {position} out of range for route of length "
            f"{len(route.sequence)}"
        )
    vehicle = instance.vehicle(route.vehicle)
    before = sequence_totals(route.sequence, vehicle, instance)
    seq = route.sequence[:position] + (order,) + route.sequence[position:]
    after = sequence_totals(seq, vehicle, instance)
    delta_dist = after[0] - before[0]
    delta_tardy = after[1] - before[1]
    feasible = after[3] <= vehicle.capacity and after[2] <= vehicle.max_route_duration
    return InsertionDelta(
        delta_dist=delta_dist,
        delta_tardy=delta_tardy,
        delta_utility=w.w_dist * delta_dist + (1.0 - w.w_dist) * delta_tardy,
        feasible=feasible,
    )


def move_delta(
    route: Route, move: "Move", instance: Instance, w: PreferenceWeights
) -> float:
    """Utility change of applying ``move`` to ``route`` under weights ``w``.

    Equals utility(route after move) minus utility(route before move); raises
    on invalid move indices.
    """
    vehicle = instance.vehicle(route.vehicle)
    new_seq = move.apply(route.sequence)
    before = sequence_totals(route.sequence, vehicle, instance)
    after = sequence_totals(new_seq, vehicle, instance)
    wd = w.w_dist
    return (wd * after[0] + (1.0 - wd) * after[1]) - (
        wd * before[0] + (1.0 - wd) * before[1]
    )
